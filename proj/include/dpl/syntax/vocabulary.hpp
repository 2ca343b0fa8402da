#ifndef DPL_SYNTAX_VOCABULARY_HPP_
#define DPL_SYNTAX_VOCABULARY_HPP_

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dpl/errors.hpp"

namespace dpl {

// Names starting with '_' are reserved for generated (fresh) actions.
inline bool is_reserved_name(std::string_view name) { return !name.empty() && name.front() == '_'; }

inline std::string fresh_action_name(std::size_t index) { return "_b" + std::to_string(index); }

namespace detail {

inline std::optional<unsigned long> fresh_index(std::string_view name) {
  if (name.size() < 3 || name.substr(0, 2) != "_b") return std::nullopt;
  unsigned long value = 0;
  auto digits = name.substr(2);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
  return value;
}

}  // namespace detail

// Canonical action order: user names lexicographically, then reserved names,
// with fresh `_bN` names ordered by N.
inline bool action_order_less(std::string_view lhs, std::string_view rhs) {
  bool lr = is_reserved_name(lhs), rr = is_reserved_name(rhs);
  if (lr != rr) return rr;
  if (lr) {
    auto li = detail::fresh_index(lhs), ri = detail::fresh_index(rhs);
    if (li && ri) return *li < *ri;
    if (li.has_value() != ri.has_value()) return li.has_value();
  }
  return lhs < rhs;
}

// The pair <actions, propositions>. Actions are kept in canonical order, so
// the bit assigned to each action (and therefore atom enumeration) is
// reproducible. With `open_propositions` any identifier that is not an action
// is accepted as a proposition.
class Vocabulary {
 public:
  static constexpr std::size_t kMaxActions = 24;

  explicit Vocabulary(std::vector<std::string> actions, std::set<std::string> propositions = {},
                      bool open_propositions = true)
      : actions_(std::move(actions)),
        propositions_(std::move(propositions)),
        open_propositions_(open_propositions) {
    if (actions_.empty()) throw VocabularyError("vocabulary needs at least one action");
    std::sort(actions_.begin(), actions_.end(), action_order_less);
    if (std::adjacent_find(actions_.begin(), actions_.end()) != actions_.end())
      throw VocabularyError("duplicate action name in vocabulary");
    for (const auto& a : actions_) {
      if (a.empty()) throw VocabularyError("empty action name");
      if (propositions_.count(a)) throw VocabularyError("'" + a + "' declared both as action and proposition");
    }
    if (actions_.size() > kMaxActions)
      throw ResourceError("vocabulary has " + std::to_string(actions_.size()) + " actions; at most " +
                          std::to_string(kMaxActions) + " are supported");
  }

  const std::vector<std::string>& actions() const noexcept { return actions_; }
  const std::set<std::string>& propositions() const noexcept { return propositions_; }
  bool open_propositions() const noexcept { return open_propositions_; }
  std::size_t size() const noexcept { return actions_.size(); }

  std::optional<std::size_t> index_of(std::string_view action) const {
    for (std::size_t i = 0; i < actions_.size(); ++i)
      if (actions_[i] == action) return i;
    return std::nullopt;
  }
  bool has_action(std::string_view action) const { return index_of(action).has_value(); }

  bool accepts_proposition(std::string_view name) const {
    if (has_action(name)) return false;
    return open_propositions_ || propositions_.count(std::string(name)) > 0;
  }

  // Same propositions, actions extended by `extra` (duplicates ignored).
  Vocabulary with_actions(const std::vector<std::string>& extra) const {
    auto all = actions_;
    for (const auto& a : extra)
      if (!has_action(a)) all.push_back(a);
    return Vocabulary(std::move(all), propositions_, open_propositions_);
  }

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

 private:
  std::vector<std::string> actions_;
  std::set<std::string> propositions_;
  bool open_propositions_;
};

}  // namespace dpl

#endif  // DPL_SYNTAX_VOCABULARY_HPP_
