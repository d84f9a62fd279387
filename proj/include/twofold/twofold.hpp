#pragma once

#include "core.hpp"
#include "system.hpp"
#include "flow.hpp"
#include "sigma_geometry.hpp"
#include "invariants.hpp"
#include "returns.hpp"
#include "cycles.hpp"
#include "stability.hpp"
#include "catalogue.hpp"
