#pragma once

// Umbrella header.
#include "utsp/error.hpp"
#include "utsp/metric_space.hpp"
#include "utsp/order.hpp"
#include "utsp/order_ratio.hpp"
#include "utsp/parallel.hpp"
#include "utsp/snake.hpp"
#include "utsp/tree.hpp"
#include "utsp/laminar.hpp"
#include "utsp/square.hpp"
#include "utsp/figures.hpp"
#include "utsp/star.hpp"
#include "utsp/gluing.hpp"
#include "utsp/copies.hpp"
#include "utsp/nets.hpp"
#include "utsp/random.hpp"
#include "utsp/tiling.hpp"
#include "utsp/io.hpp"
#include "utsp/experiment.hpp"
#include "utsp/acceptance.hpp"
