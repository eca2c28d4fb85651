#pragma once

#include "shear/lacunary/bounds.hpp"
#include "shear/lacunary/probes.hpp"
#include "shear/lacunary/sequences.hpp"
#include "shear/lacunary/series.hpp"
