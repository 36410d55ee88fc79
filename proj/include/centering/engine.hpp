#pragma once

// Centering machinery: Cf ranking, Cb computation, transition
// classification and the realization rules R1/R2. Everything here is a pure
// function over the discourse model plus an expression->entity binding map
// produced by the resolver (or taken from gold annotation).

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "centering/model.hpp"

namespace centering {

/// Key of one expression within an utterance.
struct ExpressionKey {
  std::size_t clause = 0;
  std::size_t expression = 0;

  auto operator<=>(const ExpressionKey&) const = default;
};

/// Total binding map for an utterance.
using Bindings = std::map<ExpressionKey, std::string>;

/// State carried from one utterance to the next: the backward-looking
/// center and the ranked forward-looking centers. cb, when present, is a
/// member of cf; cf holds no duplicates and no segment entities.
struct CenteringState {
  std::optional<std::string> cb;
  std::vector<std::string> cf;
  std::string source_utterance;

  bool operator==(const CenteringState&) const = default;

  std::optional<std::string> cf_head() const {
    if (cf.empty()) return std::nullopt;
    return cf.front();
  }
};

enum class TransitionLabel { continuation, retention, shifting, initial };

enum class Rule { r1, r2 };
enum class RuleStatus { satisfied, violated, vacuous };

struct RuleCheck {
  Rule rule = Rule::r1;
  RuleStatus status = RuleStatus::vacuous;
  std::string detail;

  bool operator==(const RuleCheck&) const = default;
};

/// Fixed role hierarchy for Cf ranking. The subject-first step is the
/// theory's; the remainder follows the conventional obliqueness order and
/// lives in this one table so experiments can swap it.
inline int role_rank(Role r) {
  switch (r) {
    case Role::subject: return 0;
    case Role::direct_object: return 1;
    case Role::indirect_object: return 2;
    case Role::oblique: return 3;
    case Role::possessor: return 4;
    case Role::other: return 5;
  }
  return 5;
}

/// One entity realization: which entity, in which grammatical role, where.
struct Realization {
  std::string entity;
  Role role = Role::other;
  std::size_t clause = 0;
  std::size_t position = 0;
};

/// Ranks realized entities by role hierarchy, ties broken by the linear
/// position (clause order, then token index) of the realization that
/// achieved the best role. Duplicates collapse keeping the highest rank.
inline std::vector<std::string> rank_entities(
    const std::vector<Realization>& realizations) {
  using Key = std::tuple<int, std::size_t, std::size_t>;
  std::map<std::string, Key> best;
  for (const Realization& r : realizations) {
    Key key{role_rank(r.role), r.clause, r.position};
    auto it = best.find(r.entity);
    if (it == best.end() || key < it->second) best[r.entity] = key;
  }
  std::vector<std::pair<Key, std::string>> order;
  order.reserve(best.size());
  for (auto& [entity, key] : best) order.emplace_back(key, entity);
  std::sort(order.begin(), order.end());
  std::vector<std::string> out;
  out.reserve(order.size());
  for (auto& [key, entity] : order) out.push_back(entity);
  return out;
}

/// Collects realizations of individual entities from bound expressions.
/// Segment entities are invisible to the Cf/Cb machinery.
inline std::vector<Realization> collect_realizations(
    const Utterance& utterance, const EntityTable& entities,
    const Bindings& bindings) {
  std::vector<Realization> out;
  for (std::size_t ci = 0; ci < utterance.clauses.size(); ++ci) {
    const Clause& clause = utterance.clauses[ci];
    for (std::size_t ei = 0; ei < clause.expressions.size(); ++ei) {
      auto it = bindings.find(ExpressionKey{ci, ei});
      if (it == bindings.end()) continue;
      const Entity* entity = entities.find(it->second);
      if (!entity || entity->kind == EntityKind::segment) continue;
      out.push_back(Realization{entity->id, clause.expressions[ei].role, ci,
                                clause.expressions[ei].position});
    }
  }
  return out;
}

/// Ranked forward-looking centers of an utterance under the given bindings:
/// all individual entities it realizes, subject first, then by obliqueness,
/// ties by linear position.
inline std::vector<std::string> rank_cfs(const Utterance& utterance,
                                         const EntityTable& entities,
                                         const Bindings& bindings) {
  return rank_entities(collect_realizations(utterance, entities, bindings));
}

/// R1's realization clause: the previous Cb if it is realized again,
/// otherwise the highest ranked previous Cf that is realized, otherwise no
/// Cb is established.
inline std::optional<std::string> compute_cb(
    const std::set<std::string>& realized, const CenteringState& prev) {
  if (prev.cb && realized.count(*prev.cb)) return prev.cb;
  for (const std::string& id : prev.cf)
    if (realized.count(id)) return id;
  return std::nullopt;
}

/// Transition classification. The first utterance of a discourse is
/// initial; a Cb change (including from or to "no Cb") is shifting; an
/// unchanged Cb is continuation when it heads the current Cf list and
/// retention otherwise, comparing optionals directly in the degenerate
/// no-Cb cases.
inline TransitionLabel classify_transition(
    const std::optional<CenteringState>& prev, const CenteringState& cur) {
  if (!prev) return TransitionLabel::initial;
  if (cur.cb != prev->cb) return TransitionLabel::shifting;
  if (cur.cb == cur.cf_head()) return TransitionLabel::continuation;
  return TransitionLabel::retention;
}

namespace detail {

inline std::string describe_expression(const Utterance& utterance,
                                       const ExpressionKey& key) {
  const ReferringExpression& ex =
      utterance.clauses[key.clause].expressions[key.expression];
  if (ex.surface) return "'" + *ex.surface + "'";
  return "clause " + std::to_string(key.clause) + " expression " +
         std::to_string(key.expression);
}

inline bool counts_as_segment_binding(const EntityTable& entities,
                                      const Bindings& bindings,
                                      const ExpressionKey& key) {
  auto it = bindings.find(key);
  if (it == bindings.end()) return false;
  const Entity* e = entities.find(it->second);
  return e && e->kind == EntityKind::segment;
}

}  // namespace detail

/// R1: with exactly one pronoun in the utterance, that pronoun must denote
/// the Cb. Reflexive clitics carry no centering choice and do not count;
/// neither do segment references, which are outside centering. With zero or
/// two-plus pronouns the Cb is fixed by R1's realization clause instead and
/// the check is vacuous.
inline RuleCheck check_r1(const Utterance& utterance, const Bindings& bindings,
                          const std::optional<std::string>& cb,
                          const EntityTable& entities) {
  std::vector<ExpressionKey> pronouns;
  for (std::size_t ci = 0; ci < utterance.clauses.size(); ++ci) {
    const Clause& clause = utterance.clauses[ci];
    for (std::size_t ei = 0; ei < clause.expressions.size(); ++ei) {
      const ReferringExpression& ex = clause.expressions[ei];
      if (!is_pronoun_form(ex.form) || ex.form == Form::reflexive_clitic)
        continue;
      ExpressionKey key{ci, ei};
      if (detail::counts_as_segment_binding(entities, bindings, key)) continue;
      pronouns.push_back(key);
    }
  }
  if (pronouns.size() != 1) {
    return RuleCheck{Rule::r1, RuleStatus::vacuous,
                     pronouns.empty() ? "no pronouns"
                                      : "more than one pronoun"};
  }
  const ExpressionKey key = pronouns.front();
  auto bound = bindings.find(key);
  const std::string name = detail::describe_expression(utterance, key);
  if (bound != bindings.end() && cb && bound->second == *cb)
    return RuleCheck{Rule::r1, RuleStatus::satisfied,
                     "single pronoun " + name + " denotes the Cb"};
  std::string detail = "single pronoun " + name + " denotes " +
                       (bound == bindings.end() ? "nothing" : bound->second) +
                       ", not the Cb" + (cb ? " " + *cb : " (none)");
  return RuleCheck{Rule::r1, RuleStatus::violated, std::move(detail)};
}

/// R2: if a previous Cf is pronominalized, every previous Cf ranked above
/// it that is realized here must be pronominalized too.
inline RuleCheck check_r2(const CenteringState& prev,
                          const Utterance& utterance, const Bindings& bindings,
                          const EntityTable& entities) {
  std::map<std::string, bool> pronominalized;  // realized entity -> any pronoun
  for (std::size_t ci = 0; ci < utterance.clauses.size(); ++ci) {
    const Clause& clause = utterance.clauses[ci];
    for (std::size_t ei = 0; ei < clause.expressions.size(); ++ei) {
      auto it = bindings.find(ExpressionKey{ci, ei});
      if (it == bindings.end()) continue;
      const Entity* entity = entities.find(it->second);
      if (!entity || entity->kind == EntityKind::segment) continue;
      bool& flag = pronominalized[entity->id];
      flag = flag || is_pronoun_form(clause.expressions[ei].form);
    }
  }
  std::string detail;
  for (std::size_t i = 0; i < prev.cf.size(); ++i) {
    auto higher = pronominalized.find(prev.cf[i]);
    if (higher == pronominalized.end() || higher->second) continue;
    // prev.cf[i] realized without a pronoun: any lower pronominalized Cf?
    for (std::size_t j = i + 1; j < prev.cf.size(); ++j) {
      auto lower = pronominalized.find(prev.cf[j]);
      if (lower == pronominalized.end() || !lower->second) continue;
      if (!detail.empty()) detail += "; ";
      detail += prev.cf[i] + " outranks pronominalized " + prev.cf[j] +
                " but is not pronominalized";
    }
  }
  if (detail.empty())
    return RuleCheck{Rule::r2, RuleStatus::satisfied,
                     "no higher ranked center realized without a pronoun"};
  return RuleCheck{Rule::r2, RuleStatus::violated, std::move(detail)};
}

struct AdvanceResult {
  CenteringState state;
  TransitionLabel transition = TransitionLabel::initial;
  std::vector<RuleCheck> checks;
};

/// Folds one utterance into the centering state: computes the new Cb and Cf
/// list, classifies the transition, and runs R1/R2. For the discourse
/// initial utterance both rules are vacuous (there is no preceding state
/// for them to constrain against).
inline AdvanceResult advance(const std::optional<CenteringState>& prev,
                             const Utterance& utterance,
                             const Bindings& bindings,
                             const EntityTable& entities) {
  AdvanceResult result;
  std::set<std::string> realized;
  for (const Realization& r :
       collect_realizations(utterance, entities, bindings))
    realized.insert(r.entity);

  result.state.cf = rank_cfs(utterance, entities, bindings);
  result.state.source_utterance = utterance.id;
  if (prev) result.state.cb = compute_cb(realized, *prev);
  result.transition = classify_transition(prev, result.state);

  if (!prev) {
    result.checks = {
        RuleCheck{Rule::r1, RuleStatus::vacuous, "discourse-initial utterance"},
        RuleCheck{Rule::r2, RuleStatus::vacuous,
                  "discourse-initial utterance"}};
  } else {
    result.checks = {check_r1(utterance, bindings, result.state.cb, entities),
                     check_r2(*prev, utterance, bindings, entities)};
  }
  return result;
}

}  // namespace centering
