#pragma once

// Umbrella header.

#include "latsq/cycles.hpp"
#include "latsq/enumerate.hpp"
#include "latsq/parity.hpp"
#include "latsq/partitions.hpp"
#include "latsq/permutation.hpp"
#include "latsq/sampler.hpp"
#include "latsq/square.hpp"
#include "latsq/version.hpp"
