#pragma once

#include "vecpart/assignment.hpp"
#include "vecpart/balance.hpp"
#include "vecpart/embedding.hpp"
#include "vecpart/graph.hpp"
#include "vecpart/kmeans.hpp"
#include "vecpart/matrix.hpp"
#include "vecpart/metrics.hpp"
#include "vecpart/parallel.hpp"
#include "vecpart/partitioner.hpp"
#include "vecpart/reorder.hpp"
#include "vecpart/rng.hpp"
#include "vecpart/sbm.hpp"
