#pragma once

#include "pcg/graph.h"
#include "pcg/trace.h"
#include "pcg/word.h"

namespace testing_graphs {

inline pcg::CommutationGraph gamma1() { return pcg::parse_graph("gens: a b c\nedge: a b\n"); }
inline pcg::CommutationGraph free2() { return pcg::parse_graph("gens: a b\n"); }
inline pcg::CommutationGraph zsq() { return pcg::parse_graph("gens: a b\nedge: a b\n"); }
inline pcg::CommutationGraph zee() { return pcg::parse_graph("gens: a\n"); }
// path a-b-c-d in Δ, i.e. indecomposable on four letters
inline pcg::CommutationGraph path4() { return pcg::parse_graph("gens: a b c d\nedge: a c\nedge: a d\nedge: b d\n"); }

}  // namespace testing_graphs
