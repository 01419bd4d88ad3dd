#pragma once

#include "openmap/analysis.hpp"
#include "openmap/dynamics.hpp"
#include "openmap/error.hpp"
#include "openmap/linalg.hpp"
#include "openmap/maps.hpp"
#include "openmap/models.hpp"
#include "openmap/runner.hpp"
#include "openmap/scenario.hpp"
#include "openmap/spin.hpp"
#include "openmap/states.hpp"
