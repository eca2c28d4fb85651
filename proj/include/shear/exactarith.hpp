#pragma once

#include "shear/error.hpp"
#include "shear/exactarith/complex_ball.hpp"
#include "shear/exactarith/elementary.hpp"
#include "shear/exactarith/logmag.hpp"
#include "shear/exactarith/rat_interval.hpp"
#include "shear/exactarith/real.hpp"
#include "shear/exactarith/real_interval.hpp"
