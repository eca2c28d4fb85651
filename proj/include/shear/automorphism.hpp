#pragma once

#include "shear/automorphism/shear_auto.hpp"
