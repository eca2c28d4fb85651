#pragma once

#include "shear/constructions/mu.hpp"
#include "shear/constructions/recurrence.hpp"
#include "shear/constructions/serialize.hpp"
