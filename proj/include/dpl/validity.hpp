#ifndef DPL_VALIDITY_HPP_
#define DPL_VALIDITY_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpl/errors.hpp"
#include "dpl/semantics/countermodel.hpp"
#include "dpl/semantics/structure.hpp"
#include "dpl/syntax/metrics.hpp"
#include "dpl/syntax/vocabulary.hpp"
#include "dpl/tableau/prover.hpp"

namespace dpl {

enum class VerdictKind { Valid, Invalid, Sat, Unsat };

inline const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Valid: return "VALID";
    case VerdictKind::Invalid: return "INVALID";
    case VerdictKind::Sat: return "SAT";
    case VerdictKind::Unsat: return "UNSAT";
  }
  return "?";
}

struct Verdict {
  VerdictKind kind;
  Vocabulary vocabulary;
  std::size_t fresh_actions = 0;
  std::vector<TraceRecord> trace;
  std::optional<VStructure> model;  // countermodel for Invalid, model for Sat
  TableauStats stats;

  // Valid or Sat.
  bool holds() const noexcept { return kind == VerdictKind::Valid || kind == VerdictKind::Sat; }
};

struct CheckOptions {
  bool record_trace = true;
  std::optional<std::size_t> max_fresh;  // global mode only
};

namespace detail {

// Runs the tableau on `start` and turns an open branch into a model of it.
inline Verdict run_tableau(const Formula& start, const Vocabulary& vocab, bool validity, std::size_t fresh,
                           const CheckOptions& opts) {
  TableauResult r = prove_tableau(start, vocab, ProveOptions{opts.record_trace});
  Verdict v{validity ? (r.closed ? VerdictKind::Valid : VerdictKind::Invalid)
                     : (r.closed ? VerdictKind::Unsat : VerdictKind::Sat),
            vocab, fresh, std::move(r.trace), std::nullopt, r.stats};
  if (!r.closed) {
    v.model = extract_countermodel(*r.open_branch);
    if (!satisfies(*v.model, 0, start))
      throw std::logic_error("extracted structure does not satisfy the open branch's root formula");
  }
  return v;
}

inline Vocabulary local_default_vocabulary(const Formula& f) {
  auto acts = primitive_actions(f);
  std::vector<std::string> actions(acts.begin(), acts.end());
  if (actions.empty()) actions.push_back(fresh_action_name(1));
  return Vocabulary(actions);
}

}  // namespace detail

// Pr(f) plus k fresh actions _b1.._bk; at least one action in total.
inline Vocabulary global_vocabulary(const Formula& f, std::size_t k) {
  auto acts = primitive_actions(f);
  std::vector<std::string> actions(acts.begin(), acts.end());
  for (std::size_t i = 1; i <= k; ++i) actions.push_back(fresh_action_name(i));
  if (actions.empty()) actions.push_back(fresh_action_name(1));
  return Vocabulary(actions);
}

inline Verdict check_local(const Formula& f, const Vocabulary& vocab, const CheckOptions& opts = {}) {
  return detail::run_tableau(nnf(Formula::negation(f)), vocab, true, 0, opts);
}

inline Verdict check_sat(const Formula& f, const Vocabulary& vocab, const CheckOptions& opts = {}) {
  return detail::run_tableau(nnf(f), vocab, false, 0, opts);
}

namespace detail {

inline Verdict run_global(const Formula& start, bool validity, const CheckOptions& opts) {
  const std::size_t k = existential_degree(start);
  if (opts.max_fresh && k > *opts.max_fresh)
    throw ResourceError("global mode needs " + std::to_string(k) + " fresh actions, above the limit of " +
                        std::to_string(*opts.max_fresh));
  return run_tableau(start, global_vocabulary(start, k), validity, k, opts);
}

}  // namespace detail

// Valid here means valid over every vocabulary containing Pr(f).
inline Verdict check_global(const Formula& f, const CheckOptions& opts = {}) {
  return detail::run_global(nnf(Formula::negation(f)), true, opts);
}

inline Verdict check_sat_global(const Formula& f, const CheckOptions& opts = {}) {
  return detail::run_global(nnf(f), false, opts);
}

// Number of fresh actions global mode adds for a validity query on f.
inline std::size_t global_fresh_count(const Formula& f) { return existential_degree(Formula::negation(f)); }

}  // namespace dpl

#endif  // DPL_VALIDITY_HPP_
