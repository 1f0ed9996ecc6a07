#pragma once

#include "rollgeo/bending.hpp"
#include "rollgeo/config.hpp"
#include "rollgeo/dynamics.hpp"
#include "rollgeo/errors.hpp"
#include "rollgeo/geometry.hpp"
#include "rollgeo/io.hpp"
#include "rollgeo/plane.hpp"
#include "rollgeo/random.hpp"
#include "rollgeo/state.hpp"
