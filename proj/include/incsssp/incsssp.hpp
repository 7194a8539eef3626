#pragma once

#include "incsssp/types.hpp"
#include "incsssp/graph.hpp"
#include "incsssp/estimate_table.hpp"
#include "incsssp/lazy.hpp"
#include "incsssp/det_range.hpp"
#include "incsssp/rand_range.hpp"
#include "incsssp/short_tree.hpp"
#include "incsssp/incr_sssp.hpp"
#include "incsssp/oracle.hpp"
#include "incsssp/workloads.hpp"
#include "incsssp/stream_io.hpp"
#include "incsssp/replay.hpp"
