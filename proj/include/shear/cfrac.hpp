#pragma once

#include "shear/cfrac/ops.hpp"
#include "shear/cfrac/phase.hpp"
#include "shear/cfrac/symint.hpp"
#include "shear/cfrac/theta.hpp"
