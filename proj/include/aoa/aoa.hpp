#pragma once

#include "aoa/numerics.hpp"
#include "aoa/beam.hpp"
#include "aoa/focal_plane.hpp"
#include "aoa/fisher.hpp"
#include "aoa/pointing.hpp"
#include "aoa/estimator.hpp"
#include "aoa/scenario.hpp"
#include "aoa/report.hpp"
#include "aoa/commands.hpp"
