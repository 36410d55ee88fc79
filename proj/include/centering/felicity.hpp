#pragma once

// Felicity judgment for the judged (main clause) subject form, and the
// production-side advisor that picks a referring form for an intended
// referent.
//
// The verdict follows the resolution dynamics: a null subject that kept the
// expected referent encodes continuation; one re-bound by a cue at or
// before the agreement window end is a licensed shift; a post-window
// re-binding is a garden path. The Def. 1' transition label is part of the
// inputs but can lawfully disagree with the form's dynamics when the
// previous utterance established no Cb, or when a pragmatic override
// elsewhere contests a kept default.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "centering/engine.hpp"
#include "centering/model.hpp"
#include "centering/resolver.hpp"

namespace centering {

enum class FelicityLabel {
  felicitous,
  marked,
  infelicitous_garden_path,
  violation,
};

enum class ReasonCode {
  null_continue,
  strong_shift,
  null_shift_licensed,
  null_shift_unlicensed,
  strong_continue_marked,
  r1_violation,
  r2_violation,
  garden_path,
  pragmatic_override_applied,
};

struct FelicityVerdict {
  FelicityLabel label = FelicityLabel::felicitous;
  std::vector<ReasonCode> reasons;

  bool operator==(const FelicityVerdict&) const = default;
};

/// Labels one utterance given its transition, resolution and rule checks.
/// First match wins: rule violations, then garden paths, then the judged
/// subject's form and disposition. Clitic choice is grammar-forced and
/// never penalized; names and NPs are felicitous unless a rule fired.
inline FelicityVerdict judge(TransitionLabel transition,
                             const ResolutionResult& resolution,
                             const std::vector<RuleCheck>& checks) {
  FelicityVerdict verdict;
  for (const RuleCheck& check : checks) {
    if (check.status != RuleStatus::violated) continue;
    verdict.label = FelicityLabel::violation;
    verdict.reasons.push_back(check.rule == Rule::r1 ? ReasonCode::r1_violation
                                                     : ReasonCode::r2_violation);
  }
  if (verdict.label == FelicityLabel::violation) return verdict;

  if (resolution.garden_path ||
      resolution.subject.disposition == SubjectDisposition::forced_post_window)
    return FelicityVerdict{FelicityLabel::infelicitous_garden_path,
                           {ReasonCode::garden_path}};

  const SubjectInfo& subject = resolution.subject;
  switch (subject.disposition) {
    case SubjectDisposition::none:
    case SubjectDisposition::non_pronominal:
    case SubjectDisposition::segment_ref:
      return FelicityVerdict{FelicityLabel::felicitous, {}};
    case SubjectDisposition::overridden:
      return FelicityVerdict{FelicityLabel::felicitous,
                             {ReasonCode::pragmatic_override_applied}};
    case SubjectDisposition::excluded_default:
      return FelicityVerdict{FelicityLabel::felicitous,
                             {ReasonCode::strong_shift}};
    case SubjectDisposition::forced_in_window:
      return FelicityVerdict{FelicityLabel::felicitous,
                             {subject.form == Form::null_subject
                                  ? ReasonCode::null_shift_licensed
                                  : ReasonCode::strong_shift}};
    case SubjectDisposition::default_kept:
      if (subject.form == Form::strong_pronoun)
        return FelicityVerdict{FelicityLabel::marked,
                               {ReasonCode::strong_continue_marked}};
      if (subject.form == Form::null_subject) {
        if (subject.contested)
          return FelicityVerdict{FelicityLabel::marked,
                                 {ReasonCode::null_shift_unlicensed}};
        return FelicityVerdict{FelicityLabel::felicitous,
                               {ReasonCode::null_continue}};
      }
      return FelicityVerdict{FelicityLabel::felicitous, {}};
    case SubjectDisposition::forced_post_window:
      break;  // unreachable: handled with garden_path above
  }
  (void)transition;
  return FelicityVerdict{FelicityLabel::infelicitous_garden_path,
                         {ReasonCode::garden_path}};
}

enum class AdviceRationale {
  continuation_default,   // intended is the expected center
  shift_with_licensing,   // planned agreement features pick it out uniquely
  shift_needs_strong,     // nothing in the window would disambiguate
  grammar_forced_clitic,  // non-subject roles pronominalize as clitics
};

struct FormAdvice {
  Form form = Form::null_subject;
  AdviceRationale rationale = AdviceRationale::continuation_default;

  bool operator==(const FormAdvice&) const = default;
};

class AdviseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Recommends a referring form for `intended` in the given role, planning a
/// clause whose agreement window will carry `planned` features. A null
/// subject is advised for the expected center, or for a shift whose target
/// the planned features pick out uniquely among the current centers;
/// otherwise a strong pronoun. Non-subject pronominal references are
/// grammar-forced clitics.
inline FormAdvice advise_form(const std::string& intended, Role role,
                              const CenteringState& state,
                              const MorphFeatures& planned,
                              const EntityTable& entities) {
  if (role != Role::subject)
    return FormAdvice{Form::clitic_pronoun, AdviceRationale::grammar_forced_clitic};

  bool available = false;
  for (const std::string& id : state.cf)
    if (id == intended) available = true;
  if (!available)
    throw AdviseError("not an available center: " + intended);

  std::optional<std::string> expected;
  for (const std::string& id : state.cf) {
    const Entity* e = entities.find(id);
    if (e && e->kind == EntityKind::individual) {
      expected = id;
      break;
    }
  }
  if (expected && *expected == intended)
    return FormAdvice{Form::null_subject, AdviceRationale::continuation_default};

  const Entity* target = entities.find(intended);
  bool unique = target && target->kind == EntityKind::individual &&
                !planned.empty() && compatible(planned, *target);
  if (unique) {
    for (const std::string& id : state.cf) {
      if (id == intended) continue;
      const Entity* e = entities.find(id);
      if (!e || e->kind == EntityKind::segment) continue;
      if (compatible(planned, *e)) {
        unique = false;
        break;
      }
    }
  }
  if (unique)
    return FormAdvice{Form::null_subject, AdviceRationale::shift_with_licensing};
  return FormAdvice{Form::strong_pronoun, AdviceRationale::shift_needs_strong};
}

}  // namespace centering
