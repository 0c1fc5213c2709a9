#pragma once

#include "group.hpp"
#include "estimate.hpp"
#include "norm.hpp"
#include "kernel.hpp"
#include "kernel_checks.hpp"
#include "box.hpp"
#include "voxel.hpp"
#include "region.hpp"
#include "field.hpp"
#include "geometry.hpp"
#include "engine.hpp"
#include "calibration.hpp"
#include "coarea.hpp"
#include "gamma.hpp"
