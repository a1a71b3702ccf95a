#pragma once

#include "mlgraph/error.hpp"
#include "mlgraph/label_algebra.hpp"
#include "mlgraph/graph.hpp"
#include "mlgraph/additive.hpp"
#include "mlgraph/paths.hpp"
#include "mlgraph/grothendieck.hpp"
#include "mlgraph/open_graph.hpp"
#include "mlgraph/homology.hpp"
#include "mlgraph/emergence.hpp"
#include "mlgraph/io.hpp"
