#pragma once

// Umbrella header.

#include "addspan/apsp.hpp"
#include "addspan/bfs.hpp"
#include "addspan/clustering.hpp"
#include "addspan/edge_list_io.hpp"
#include "addspan/edge_set.hpp"
#include "addspan/generators.hpp"
#include "addspan/graph.hpp"
#include "addspan/oracle.hpp"
#include "addspan/oracle_io.hpp"
#include "addspan/spanner.hpp"
#include "addspan/spanner2.hpp"
#include "addspan/spanner8.hpp"
#include "addspan/types.hpp"
#include "addspan/verify.hpp"
