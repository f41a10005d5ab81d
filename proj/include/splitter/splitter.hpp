#pragma once

#include "splitter/element_set.hpp"
#include "splitter/errors.hpp"
#include "splitter/multigraph.hpp"
#include "splitter/matroid.hpp"
#include "splitter/matroid_ops.hpp"
#include "splitter/graph.hpp"
#include "splitter/contractibility.hpp"
#include "splitter/structures.hpp"
#include "splitter/free_family.hpp"
