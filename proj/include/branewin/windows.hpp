#pragma once

#include <optional>
#include <string>
#include <vector>

#include "branewin/brane.hpp"
#include "branewin/cohom.hpp"
#include "branewin/homspace.hpp"

namespace branewin {

// The window G_t: admissible twists are {t, ..., t + width - 1} with
// width = d from the model decomposition.
struct Window {
  long t = 0;
  long width = 0;
  bool contains(long k) const { return k >= t && k < t + width; }
};

Window window_at(const GaugedModel& m, long t);

bool in_window(const Brane& e, const Window& w);

// Raised when a certificate search (as opposed to a linear solve) fails.
struct CertificateError : std::runtime_error {
  explicit CertificateError(const std::string& what)
      : std::runtime_error(what) {}
};

// One replacement pass of the projection: a closed comparison map between
// the previous stage and the new one, an exact contraction of its cone
// witnessing the quasi-isomorphism on the side, and the curvature
// corrections that were solved for, by homological grade.
struct ProjectionHop {
  BraneMap comparison;
  bool forward;  // true: comparison maps new stage -> previous stage
  CechContraction cone_contraction;
  std::vector<std::pair<long, BraneMap>> perturbations;
};

struct ProjectionResult {
  Brane brane;
  std::vector<ProjectionHop> hops;
  std::string perturbation_log() const;
  std::string to_json_string() const;
};

// Lemma-qes engine: Euler-step replacement of out-of-window summands on the
// given side, curvature perturbation by exact linear solves, exact final
// certification (the result passes check_brane), and per-pass cone
// contraction certificates. Requires e.space() == side.
ProjectionResult window_project(const Brane& e, const Window& w, Space side,
                                long bound);

// The resolution of a single line bundle O(k) into the window on the given
// side, at the complex level (the superpotential is forgotten).
ProjectionResult euler_resolve(const ModelPtr& model, long k, const Window& w,
                               Space side, long bound);

// Re-tags in-window data to the opposite GIT quotient.
Brane transport(const Brane& e, const Window& w, Space from);

struct MonodromyResult {
  Brane brane;                  // on Plus, lies in window t+1
  ProjectionResult projection;  // the Minus-side projection
};

// Phi_{t+1}^{-1} Phi_t on objects: transport to Minus at window t, project
// into window t+1 there, transport back.
MonodromyResult monodromy(const Brane& e, long t, long bound);

// Completes a closed degree-0 comparison into a full homotopy certificate
// by linear solves, when one exists at this bound.
std::optional<HomotopyCertificate> complete_certificate(const BraneMap& f,
                                                        long bound);

// Searches for a homotopy equivalence between a and b: tries structural
// identity, then closed maps seeded from the unit-reduced shapes.
std::optional<HomotopyCertificate> find_equivalence(const Brane& a,
                                                    const Brane& b,
                                                    long bound);

}  // namespace branewin
