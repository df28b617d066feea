#pragma once

#include "treeembed/constants.hpp"
#include "treeembed/dense_detect.hpp"
#include "treeembed/dense_fill.hpp"
#include "treeembed/embed_core.hpp"
#include "treeembed/embedding.hpp"
#include "treeembed/errors.hpp"
#include "treeembed/generators.hpp"
#include "treeembed/graph.hpp"
#include "treeembed/harness.hpp"
#include "treeembed/json_io.hpp"
#include "treeembed/matching.hpp"
#include "treeembed/pipelines.hpp"
#include "treeembed/rational.hpp"
#include "treeembed/sparse_path.hpp"
#include "treeembed/subgraph_search.hpp"
#include "treeembed/tree.hpp"
#include "treeembed/tree_tools.hpp"
