#pragma once

#include "gf2.hpp"
#include "graph.hpp"
#include "spanning_tree.hpp"
#include "cycles.hpp"
#include "complex.hpp"
#include "morse.hpp"
#include "cohomology.hpp"
#include "tc_bounds.hpp"
