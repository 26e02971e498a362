#pragma once

#include "firefighter/graph.hpp"
#include "firefighter/layout.hpp"
#include "firefighter/widths.hpp"
#include "firefighter/propagation.hpp"
#include "firefighter/bits.hpp"
#include "firefighter/bubble.hpp"
#include "firefighter/solvers.hpp"
#include "firefighter/reduction.hpp"
#include "firefighter/corpus.hpp"
#include "firefighter/io.hpp"
