#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "cscodec/transforms.hpp"

namespace cs {

using LinOp = std::function<Vec(const Vec&)>;

struct SolverOptions {
  double epsilon = 0.0;          // residual bound, same units as y
  int max_outer_iterations = 2000;
  double tolerance = 1e-6;       // relative progress/feasibility slack
};

struct SolverReport {
  int iterations = 0;
  double residual_norm = 0.0;
  double l1_norm = 0.0;
  bool converged = false;
  // Per-iteration logs: l1 norm of the iterate, and the Douglas-Rachford
  // step norm, which is the solver's monotone progress measure.
  std::vector<double> l1_trace;
  std::vector<double> step_trace;
};

// Basis pursuit denoise:  min ||x||_1  s.t.  ||y - L x||_2 <= epsilon,
// for any operator given as a forward/adjoint callback pair. Alternating
// direction scheme on the constrained form: x and the residual copy are
// split, the residual is projected onto the epsilon ball each iteration, and
// the x step is linearized with a step size from 20 deterministic power
// iterations on L^T L. Same inputs always give the same output bits.
// Throws NonFiniteEncountered if the iterates leave the finite range.
std::pair<Vec, SolverReport> bpdn_solve(const LinOp& forward, const LinOp& adjoint,
                                        const Vec& y, size_t n,
                                        const SolverOptions& opts = {});

}  // namespace cs
