#pragma once

#include "tangle/combinatorics.hpp"
#include "tangle/disentangle.hpp"
#include "tangle/encoding.hpp"
#include "tangle/enumerate.hpp"
#include "tangle/humphries.hpp"
#include "tangle/newick.hpp"
#include "tangle/parallel.hpp"
#include "tangle/tree.hpp"
