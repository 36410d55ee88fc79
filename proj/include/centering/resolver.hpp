#pragma once

// Incremental left-to-right pronoun resolution. Expressions and the verbal
// agreement window are processed in token order; morphological and
// disjoint-reference filters apply at the position where each cue becomes
// audible, possibly revising an earlier binding. A revision of the main
// clause subject after the agreement window closes is a garden path.

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "centering/engine.hpp"
#include "centering/model.hpp"

namespace centering {

enum class TraceKind { bind, filter, revise, skip_segment };

/// One step of the resolution trace. Events are ordered by clause, then by
/// non-decreasing token position; every revise is preceded by a filter
/// event at the same position.
struct TraceEvent {
  std::size_t clause = 0;
  std::size_t position = 0;
  TraceKind kind = TraceKind::bind;
  std::string detail;

  bool operator==(const TraceEvent&) const = default;
};

/// Why a pronominal hypothesis holds its current value.
enum class BindingBasis { default_highest_cf, filter_forced, gold_override };

/// Internal record of one revisable pronominal binding.
struct BindingHypothesis {
  std::size_t expression = 0;
  std::string entity;
  BindingBasis basis = BindingBasis::default_highest_cf;
};

/// How the judged subject ended up bound.
enum class SubjectDisposition {
  none,              // no subject expression in the clause
  non_pronominal,    // name or definite NP, bound by annotation
  overridden,        // pragmatic_override annotation supplied the binding
  segment_ref,       // refers to a discourse segment; resolution skipped
  default_kept,      // pronoun kept its default (expected-referent) binding
  excluded_default,  // strong pronoun successfully skipped the default
  forced_in_window,  // re-bound by a filter at or before the window end
  forced_post_window // re-bound after the window end (garden path)
};

struct SubjectInfo {
  std::optional<ExpressionKey> key;
  std::optional<Form> form;
  SubjectDisposition disposition = SubjectDisposition::none;
  /// True when a pragmatic override elsewhere in the utterance put a
  /// competitor compatible with this subject into play.
  bool contested = false;

  bool operator==(const SubjectInfo&) const = default;
};

struct ResolutionResult {
  Bindings bindings;
  std::vector<TraceEvent> trace;
  bool garden_path = false;
  /// True when more than one total assignment of the clause's pronouns
  /// survives morphology and disjointness.
  bool ambiguous = false;
  SubjectInfo subject;
};

/// Raised when no consistent binding exists or the annotation needed to
/// resolve an expression is missing.
class ResolveError : public std::runtime_error {
 public:
  ResolveError(const std::string& message, std::size_t clause,
               std::optional<std::size_t> expression = std::nullopt)
      : std::runtime_error(message),
        clause_index(clause),
        expression_index(expression) {}

  std::size_t clause_index;
  std::optional<std::size_t> expression_index;
};

namespace detail {

inline std::string expression_name(const ReferringExpression& ex,
                                   std::size_t clause, std::size_t index) {
  if (ex.surface) return "'" + *ex.surface + "'";
  return "clause " + std::to_string(clause) + " expression " +
         std::to_string(index);
}

inline std::string features_text(const MorphFeatures& f) {
  std::string out;
  auto append = [&out](const std::string& s) {
    if (!out.empty()) out += ",";
    out += s;
  };
  if (f.gender)
    append(*f.gender == Gender::masculine ? "masculine" : "feminine");
  if (f.number)
    append(*f.number == Number::singular ? "singular" : "plural");
  if (f.person) append("person " + std::to_string(static_cast<int>(*f.person)));
  return out.empty() ? "unmarked" : out;
}

/// Resolves the expressions of one clause against a centering state.
class ClauseResolver {
 public:
  ClauseResolver(const Clause& clause, std::size_t clause_index,
                 const CenteringState& state, const EntityTable& entities)
      : clause_(clause),
        clause_index_(clause_index),
        state_(state),
        entities_(entities),
        bound_(clause.expressions.size()),
        skipped_(clause.expressions.size(), false),
        subject_index_(clause.subject_index()) {}

  ResolutionResult run() {
    const std::size_t window_end = clause_.agreement_window.end;
    bool window_done = false;
    for (std::size_t i = 0; i < clause_.expressions.size(); ++i) {
      if (!window_done && clause_.expressions[i].position > window_end) {
        apply_window_filter();
        window_done = true;
      }
      process(i);
    }
    if (!window_done) apply_window_filter();

    ResolutionResult out;
    for (std::size_t i = 0; i < bound_.size(); ++i)
      if (bound_[i]) out.bindings[ExpressionKey{clause_index_, i}] = *bound_[i];
    out.trace = std::move(trace_);
    out.garden_path = garden_path_;
    out.ambiguous = count_consistent_assignments(2) > 1;
    out.subject = subject_info();
    return out;
  }

 private:
  const ReferringExpression& expr(std::size_t i) const {
    return clause_.expressions[i];
  }

  std::string name(std::size_t i) const {
    return expression_name(expr(i), clause_index_, i);
  }

  void event(TraceKind kind, std::size_t position, std::string detail) {
    trace_.push_back(
        TraceEvent{clause_index_, position, kind, std::move(detail)});
  }

  [[noreturn]] void fail(std::size_t i, const std::string& what) const {
    throw ResolveError(what + ": " + name(i), clause_index_, i);
  }

  /// state.cf members compatible with the features, rank order preserved,
  /// minus the exclusions. Segment entities and unknown ids are never
  /// candidates.
  std::vector<std::string> candidates(
      const MorphFeatures& features,
      const std::set<std::string>& exclude) const {
    std::vector<std::string> out;
    for (const std::string& id : state_.cf) {
      const Entity* e = entities_.find(id);
      if (!e || e->kind == EntityKind::segment) continue;
      if (exclude.count(id)) continue;
      if (compatible(features, *e)) out.push_back(id);
    }
    return out;
  }

  /// The expected referent: the entity an unmarked subject pronoun would
  /// pick, i.e. the highest ranked individual in the state.
  std::optional<std::string> default_candidate() const {
    for (const std::string& id : state_.cf) {
      const Entity* e = entities_.find(id);
      if (e && e->kind == EntityKind::individual) return id;
    }
    return std::nullopt;
  }

  bool is_subject(std::size_t i) const {
    return subject_index_ && *subject_index_ == i;
  }

  /// Features the subject hypothesis must satisfy once the agreement
  /// window has been heard.
  MorphFeatures subject_features_with_agreement() const {
    return merge_features(expr(*subject_index_).features,
                          clause_.agreement_window.features);
  }

  void process(std::size_t i) {
    const ReferringExpression& ex = expr(i);

    if (ex.gold_ref) {
      const Entity* target = entities_.find(*ex.gold_ref);
      if (target && target->kind == EntityKind::segment) {
        bind_segment(i, *target);
        return;
      }
    }
    if (ex.pragmatic_override) {
      bind_override(i);
      return;
    }
    switch (ex.form) {
      case Form::proper_name:
      case Form::definite_np:
        bind_annotated(i);
        return;
      case Form::null_subject:
        bind_subject_pronoun(i, /*exclude_default=*/false);
        return;
      case Form::strong_pronoun:
        if (is_subject(i))
          bind_subject_pronoun(i, /*exclude_default=*/true);
        else
          bind_free_pronoun(i);
        return;
      case Form::clitic_pronoun:
        bind_clitic(i);
        return;
      case Form::reflexive_clitic:
        bind_reflexive(i);
        return;
    }
  }

  void bind_segment(std::size_t i, const Entity& target) {
    bound_[i] = target.id;
    skipped_[i] = true;
    event(TraceKind::skip_segment, expr(i).position,
          name(i) + " refers to discourse segment " + target.id +
              "; outside centering, resolution skipped");
    if (is_subject(i)) subject_disposition_ = SubjectDisposition::segment_ref;
    bind_pending_reflexives(i);
  }

  void bind_override(std::size_t i) {
    const ReferringExpression& ex = expr(i);
    if (!ex.gold_ref)
      fail(i, "pragmatic override without an annotated binding");
    if (!entities_.find(*ex.gold_ref))
      fail(i, "pragmatic override names an undeclared entity");
    bound_[i] = *ex.gold_ref;
    skipped_[i] = true;
    hypotheses_.push_back(
        BindingHypothesis{i, *ex.gold_ref, BindingBasis::gold_override});
    event(TraceKind::bind, ex.position,
          name(i) + " -> " + *ex.gold_ref +
              " (pragmatic override, filters bypassed)");
    if (is_subject(i)) subject_disposition_ = SubjectDisposition::overridden;
    bind_pending_reflexives(i);
  }

  void bind_annotated(std::size_t i) {
    const ReferringExpression& ex = expr(i);
    if (!ex.gold_ref) fail(i, "no annotated referent for");
    if (!entities_.find(*ex.gold_ref))
      fail(i, "annotated referent is undeclared for");
    bound_[i] = *ex.gold_ref;
    event(TraceKind::bind, ex.position,
          name(i) + " -> " + *ex.gold_ref + " (annotated reference)");
    if (is_subject(i))
      subject_disposition_ = SubjectDisposition::non_pronominal;
    bind_pending_reflexives(i);
  }

  void bind_subject_pronoun(std::size_t i, bool exclude_default) {
    const ReferringExpression& ex = expr(i);
    // A subject heard only after the window carries the agreement features
    // from the start.
    MorphFeatures feats = ex.features;
    if (ex.position > clause_.agreement_window.end)
      feats = merge_features(feats, clause_.agreement_window.features);

    std::vector<std::string> cands = candidates(feats, clitic_bound_);
    if (cands.empty()) fail(i, "no compatible candidate for");

    if (exclude_default) {
      const std::optional<std::string> expected = default_candidate();
      std::vector<std::string> non_default;
      for (const std::string& id : cands)
        if (!expected || id != *expected) non_default.push_back(id);
      if (!non_default.empty()) {
        bound_[i] = non_default.front();
        subject_disposition_ = SubjectDisposition::excluded_default;
        hypotheses_.push_back(BindingHypothesis{i, non_default.front(),
                                                BindingBasis::filter_forced});
        event(TraceKind::bind, ex.position,
              name(i) + " -> " + non_default.front() +
                  " (strong pronoun skips expected referent" +
                  (expected ? " " + *expected : "") + ")");
        bind_pending_reflexives(i);
        return;
      }
      // Only the expected referent is available; bind it and leave the
      // form choice to the felicity judge.
      bound_[i] = cands.front();
      subject_disposition_ = SubjectDisposition::default_kept;
      hypotheses_.push_back(
          BindingHypothesis{i, cands.front(), BindingBasis::default_highest_cf});
      event(TraceKind::bind, ex.position,
            name(i) + " -> " + cands.front() +
                " (strong pronoun, only compatible candidate)");
      bind_pending_reflexives(i);
      return;
    }

    bound_[i] = cands.front();
    subject_disposition_ = SubjectDisposition::default_kept;
    hypotheses_.push_back(
        BindingHypothesis{i, cands.front(), BindingBasis::default_highest_cf});
    event(TraceKind::bind, ex.position,
          name(i) + " -> " + cands.front() +
              " (null subject defaults to highest compatible center)");
    bind_pending_reflexives(i);
  }

  void bind_free_pronoun(std::size_t i) {
    const ReferringExpression& ex = expr(i);
    std::vector<std::string> cands = candidates(ex.features, {});
    if (cands.empty()) fail(i, "no compatible candidate for");
    bound_[i] = cands.front();
    hypotheses_.push_back(
        BindingHypothesis{i, cands.front(), BindingBasis::default_highest_cf});
    event(TraceKind::bind, ex.position,
          name(i) + " -> " + cands.front() +
              " (pronoun defaults to highest compatible center)");
  }

  void bind_clitic(std::size_t i) {
    const ReferringExpression& ex = expr(i);
    if (!ex.clitic_placement) fail(i, "clitic without placement annotation");

    const std::optional<std::string> subject_binding =
        subject_index_ ? bound_[*subject_index_] : std::nullopt;
    event(TraceKind::filter, ex.position,
          name(i) + " (" + features_text(ex.features) +
              ") asserts disjoint reference from the subject" +
              (subject_binding ? " hypothesis " + *subject_binding : ""));

    std::set<std::string> strict = clitic_bound_;
    if (subject_binding) strict.insert(*subject_binding);
    std::vector<std::string> cands = candidates(ex.features, strict);
    if (!cands.empty()) {
      bound_[i] = cands.front();
      clitic_bound_.insert(cands.front());
      hypotheses_.push_back(
          BindingHypothesis{i, cands.front(), BindingBasis::default_highest_cf});
      event(TraceKind::bind, ex.position,
            name(i) + " -> " + cands.front() +
                " (highest compatible center distinct from the subject)");
      return;
    }

    // No candidate distinct from the other hypotheses: the clitic claims
    // what it can and the conflicting binding is revised, subject first.
    std::vector<std::string> loose = candidates(ex.features, clitic_bound_);
    if (!loose.empty() && subject_binding && subject_revisable()) {
      const std::string target = loose.front();
      bound_[i] = target;
      hypotheses_.push_back(
          BindingHypothesis{i, target, BindingBasis::filter_forced});
      event(TraceKind::bind, ex.position,
            name(i) + " -> " + target + " (only compatible center)");
      std::set<std::string> exclude = clitic_bound_;
      exclude.insert(target);
      revise_subject(exclude, ex.position,
                     "disjoint reference with " + name(i), std::nullopt);
      clitic_bound_.insert(target);
      return;
    }

    // Steal from an earlier clitic if one holds the only compatible center.
    for (const std::string& id : candidates(ex.features, {})) {
      if (!clitic_bound_.count(id)) continue;
      std::optional<std::size_t> victim;
      for (std::size_t j = 0; j < i; ++j)
        if (!skipped_[j] && expr(j).form == Form::clitic_pronoun &&
            bound_[j] == id && !victim)
          victim = j;
      if (!victim) continue;
      bound_[i] = id;
      hypotheses_.push_back(
          BindingHypothesis{i, id, BindingBasis::filter_forced});
      event(TraceKind::bind, ex.position,
            name(i) + " -> " + id + " (only compatible center)");
      std::set<std::string> exclude = clitic_bound_;
      exclude.insert(id);
      if (subject_binding) exclude.insert(*subject_binding);
      std::vector<std::string> alternatives =
          candidates(expr(*victim).features, exclude);
      if (alternatives.empty())
        fail(*victim, "cannot re-bind clitic consistently");
      clitic_bound_.erase(*bound_[*victim]);
      bound_[*victim] = alternatives.front();
      clitic_bound_.insert(alternatives.front());
      event(TraceKind::revise, ex.position,
            name(*victim) + " re-bound to " + alternatives.front() +
                " (displaced by " + name(i) + ")");
      return;
    }
    fail(i, "no compatible candidate for");
  }

  void bind_reflexive(std::size_t i) {
    const ReferringExpression& ex = expr(i);
    if (!ex.clitic_placement) fail(i, "clitic without placement annotation");
    if (!subject_index_) fail(i, "reflexive clitic without a subject for");
    if (!bound_[*subject_index_]) {
      pending_reflexives_.push_back(i);
      return;
    }
    attach_reflexive(i, ex.position);
  }

  void attach_reflexive(std::size_t i, std::size_t at_position) {
    const std::string& target = *bound_[*subject_index_];
    const Entity* e = entities_.find(target);
    if (e && e->kind == EntityKind::individual &&
        !compatible(expr(i).features, *e)) {
      // The reflexive's own morphology rules the current subject
      // hypothesis out, exactly like a disjointness cue would.
      event(TraceKind::filter, at_position,
            name(i) + " (" + features_text(expr(i).features) +
                ") is incompatible with subject hypothesis " + target);
      if (!subject_revisable()) fail(i, "reflexive incompatible with subject");
      revise_subject(clitic_bound_, at_position,
                     "agreement with reflexive " + name(i), expr(i).features);
    }
    bound_[i] = *bound_[*subject_index_];
    reflexives_.push_back(i);
    event(TraceKind::bind, at_position,
          name(i) + " -> " + *bound_[i] + " (reflexive binds to the subject)");
  }

  void bind_pending_reflexives(std::size_t subject) {
    if (!is_subject(subject)) return;
    for (std::size_t i : pending_reflexives_)
      attach_reflexive(i, expr(subject).position);
    pending_reflexives_.clear();
  }

  bool subject_revisable() const {
    if (!subject_index_ || !bound_[*subject_index_]) return false;
    if (skipped_[*subject_index_]) return false;
    const Form f = expr(*subject_index_).form;
    return is_pronoun_form(f);
  }

  /// Re-binds the subject to the highest ranked alternative compatible
  /// with everything heard so far. Callers must have emitted a filter
  /// event at the same position.
  void revise_subject(const std::set<std::string>& exclude,
                      std::size_t at_position, const std::string& reason,
                      const std::optional<MorphFeatures>& extra) {
    const std::size_t subject = *subject_index_;
    MorphFeatures feats = expr(subject).features;
    if (at_position >= clause_.agreement_window.end)
      feats = merge_features(feats, clause_.agreement_window.features);
    if (extra) feats = merge_features(feats, *extra);

    std::set<std::string> all_exclusions = exclude;
    all_exclusions.insert(*bound_[subject]);
    std::vector<std::string> alternatives = candidates(feats, all_exclusions);
    if (alternatives.empty())
      fail(subject, "cannot re-bind subject consistently");

    bound_[subject] = alternatives.front();
    hypotheses_.push_back(BindingHypothesis{subject, alternatives.front(),
                                            BindingBasis::filter_forced});
    const bool post_window = at_position > clause_.agreement_window.end;
    subject_disposition_ = post_window ? SubjectDisposition::forced_post_window
                                       : SubjectDisposition::forced_in_window;
    if (post_window) garden_path_ = true;
    event(TraceKind::revise, at_position,
          expression_name(expr(subject), clause_index_, subject) +
              " re-bound to " + alternatives.front() + " (" + reason + ")");
    for (std::size_t r : reflexives_) {
      if (bound_[r] == bound_[subject]) continue;
      bound_[r] = bound_[subject];
      event(TraceKind::revise, at_position,
            name(r) + " follows the revised subject to " + *bound_[subject]);
    }
  }

  void apply_window_filter() {
    if (!subject_index_) return;
    const std::size_t subject = *subject_index_;
    if (!bound_[subject] || skipped_[subject]) return;
    const MorphFeatures& agreement = clause_.agreement_window.features;
    if (agreement.empty()) return;

    const std::size_t at = clause_.agreement_window.end;
    event(TraceKind::filter, at,
          "agreement window applies " + features_text(agreement) +
              " to the subject");
    const Entity* e = entities_.find(*bound_[subject]);
    if (!e || e->kind == EntityKind::segment) return;
    if (compatible(agreement, *e)) return;
    if (!subject_revisable())
      fail(subject, "agreement features incompatible with annotated subject");
    revise_subject(clitic_bound_, at, "agreement window", agreement);
  }

  SubjectInfo subject_info() const {
    SubjectInfo info;
    if (!subject_index_) return info;
    info.key = ExpressionKey{clause_index_, *subject_index_};
    info.form = expr(*subject_index_).form;
    info.disposition = subject_disposition_;
    return info;
  }

  /// Brute-force count of total assignments of this clause's revisable
  /// pronouns to state.cf entities satisfying morphology, subject
  /// agreement, reflexive coreference and disjoint reference. Stops at
  /// `limit`.
  std::size_t count_consistent_assignments(std::size_t limit) const {
    std::vector<std::size_t> vars;
    for (std::size_t i = 0; i < clause_.expressions.size(); ++i)
      if (is_pronoun_form(expr(i).form) && !skipped_[i]) vars.push_back(i);
    // Assign the subject first so reflexive and disjointness constraints
    // can be checked as the other variables are placed.
    std::stable_sort(vars.begin(), vars.end(),
                     [this](std::size_t a, std::size_t b) {
                       return is_subject(a) && !is_subject(b);
                     });
    std::vector<std::optional<std::string>> assignment(
        clause_.expressions.size());
    const std::optional<std::string> fixed_subject =
        subject_index_ && bound_[*subject_index_] &&
                !is_pronoun_form(expr(*subject_index_).form)
            ? bound_[*subject_index_]
            : std::nullopt;
    std::size_t count = 0;
    enumerate(vars, 0, assignment, fixed_subject, count, limit);
    return count;
  }

  void enumerate(const std::vector<std::size_t>& vars, std::size_t depth,
                 std::vector<std::optional<std::string>>& assignment,
                 const std::optional<std::string>& fixed_subject,
                 std::size_t& count, std::size_t limit) const {
    if (count >= limit) return;
    if (depth == vars.size()) {
      ++count;
      return;
    }
    const std::size_t i = vars[depth];
    const ReferringExpression& ex = expr(i);
    const std::optional<std::string> subject_assignment =
        subject_index_ && assignment[*subject_index_]
            ? assignment[*subject_index_]
            : fixed_subject;

    MorphFeatures feats = ex.features;
    if (is_subject(i))
      feats = merge_features(feats, clause_.agreement_window.features);

    for (const std::string& id : state_.cf) {
      const Entity* e = entities_.find(id);
      if (!e || e->kind == EntityKind::segment) continue;
      if (!compatible(feats, *e)) continue;
      if (ex.form == Form::reflexive_clitic) {
        if (!subject_assignment || id != *subject_assignment) continue;
      }
      if (ex.form == Form::clitic_pronoun) {
        if (subject_assignment && id == *subject_assignment) continue;
        bool clash = false;
        for (std::size_t j = 0; j < clause_.expressions.size(); ++j)
          if (j != i && expr(j).form == Form::clitic_pronoun &&
              assignment[j] == id)
            clash = true;
        if (clash) continue;
      }
      assignment[i] = id;
      enumerate(vars, depth + 1, assignment, fixed_subject, count, limit);
      assignment[i].reset();
      if (count >= limit) return;
    }
  }

  const Clause& clause_;
  std::size_t clause_index_;
  const CenteringState& state_;
  const EntityTable& entities_;

  std::vector<std::optional<std::string>> bound_;
  std::vector<bool> skipped_;  // override or segment: outside filtering
  std::optional<std::size_t> subject_index_;
  std::set<std::string> clitic_bound_;
  std::vector<std::size_t> reflexives_;
  std::vector<std::size_t> pending_reflexives_;
  std::vector<BindingHypothesis> hypotheses_;
  std::vector<TraceEvent> trace_;
  bool garden_path_ = false;
  SubjectDisposition subject_disposition_ = SubjectDisposition::none;
};

}  // namespace detail

/// Resolves one clause against the given state. clause_index labels the
/// produced keys and trace events when the clause sits inside an utterance.
inline ResolutionResult resolve_clause(const Clause& clause,
                                       const CenteringState& state,
                                       const EntityTable& entities,
                                       std::size_t clause_index = 0) {
  return detail::ClauseResolver(clause, clause_index, state, entities).run();
}

/// Resolves an utterance clause by clause. Later clauses see the entities
/// already bound in earlier clauses of the same utterance, ranked by role,
/// ahead of the carried-over centers; this is what lets the pronouns of a
/// main clause resolve against a preposed subordinate clause. Only the main
/// clause can set garden_path, and only its subject is reported for
/// judgment.
inline ResolutionResult resolve_utterance(const Utterance& utterance,
                                          const CenteringState& state,
                                          const EntityTable& entities) {
  ResolutionResult out;
  CenteringState working = state;
  std::vector<Realization> seen;
  const std::size_t main_index = utterance.main_clause_index();

  for (std::size_t ci = 0; ci < utterance.clauses.size(); ++ci) {
    const Clause& clause = utterance.clauses[ci];
    ResolutionResult part = resolve_clause(clause, working, entities, ci);

    out.bindings.insert(part.bindings.begin(), part.bindings.end());
    out.trace.insert(out.trace.end(), part.trace.begin(), part.trace.end());
    out.ambiguous = out.ambiguous || part.ambiguous;
    if (ci == main_index) {
      out.garden_path = part.garden_path;
      out.subject = part.subject;
    }

    for (const auto& [key, entity] : part.bindings) {
      const Entity* e = entities.find(entity);
      if (!e || e->kind == EntityKind::segment) continue;
      seen.push_back(Realization{entity,
                                 clause.expressions[key.expression].role, ci,
                                 clause.expressions[key.expression].position});
    }
    working.cf = rank_entities(seen);
    for (const std::string& id : state.cf)
      if (std::find(working.cf.begin(), working.cf.end(), id) ==
          working.cf.end())
        working.cf.push_back(id);
  }

  // A pragmatic override elsewhere in the utterance contests a subject that
  // kept its default binding if the overridden referent could have been the
  // subject as well.
  if (out.subject.key &&
      out.subject.disposition == SubjectDisposition::default_kept) {
    const Clause& main = utterance.clauses[main_index];
    const ReferringExpression& subject_expr =
        main.expressions[out.subject.key->expression];
    const MorphFeatures subject_feats = merge_features(
        subject_expr.features, main.agreement_window.features);
    const std::string& subject_binding = out.bindings.at(*out.subject.key);
    for (const auto& [key, entity] : out.bindings) {
      if (key == *out.subject.key || entity == subject_binding) continue;
      const ReferringExpression& other =
          utterance.clauses[key.clause].expressions[key.expression];
      if (!other.pragmatic_override) continue;
      const Entity* e = entities.find(entity);
      if (!e || e->kind == EntityKind::segment) continue;
      if (compatible(subject_feats, *e)) out.subject.contested = true;
    }
  }
  return out;
}

}  // namespace centering
