#pragma once

// Everything: exact Kantorovich distances, optimal couplings, dual
// potentials and cut norms on finite weighted graphs.

#include "articulation.hpp"
#include "cuts.hpp"
#include "envelope.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "io.hpp"
#include "lipschitz.hpp"
#include "measure.hpp"
#include "metric.hpp"
#include "quotient.hpp"
#include "rational.hpp"
#include "spanning.hpp"
#include "transport.hpp"
#include "tree.hpp"
#include "tree_norm.hpp"
