#pragma once

// Core discourse model: entities, referring expressions, clauses, utterances.
// All values are immutable after construction and safe to share across
// threads; validation reports violations as data rather than throwing.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace centering {

enum class Gender { masculine, feminine };
enum class Number { singular, plural };
enum class Person { first = 1, second = 2, third = 3 };
enum class Animacy { animate, inanimate };
enum class EntityKind { individual, segment };

enum class Form {
  null_subject,
  clitic_pronoun,
  strong_pronoun,
  proper_name,
  definite_np,
  reflexive_clitic,
};

enum class Role {
  subject,
  direct_object,
  indirect_object,
  oblique,
  possessor,
  other,
};

enum class CliticPlacement { preverbal, enclitic };
enum class ClauseType { main, subordinate };
enum class Language { italian, english };

/// A discourse referent. Gender is binary; inanimate referents still carry
/// masculine or feminine. kind=segment labels referents that stand for a
/// stretch of discourse rather than an individual; they never enter Cf lists.
struct Entity {
  std::string id;
  Gender gender = Gender::masculine;
  Number number = Number::singular;
  Animacy animacy = Animacy::animate;
  EntityKind kind = EntityKind::individual;

  bool operator==(const Entity&) const = default;
};

/// Morphological features carried by a pronoun or by a verbal agreement
/// window. An absent field is unmarked and compatible with any value.
struct MorphFeatures {
  std::optional<Gender> gender;
  std::optional<Number> number;
  std::optional<Person> person;

  bool empty() const { return !gender && !number && !person; }
  bool operator==(const MorphFeatures&) const = default;
};

/// One mention in a clause. position is the token index within the clause;
/// null subjects occupy the canonical (unpronounced) subject slot. surface
/// is optional annotation text for readable reports and golden files; it is
/// never consulted by any rule.
struct ReferringExpression {
  Form form = Form::proper_name;
  Role role = Role::other;
  MorphFeatures features;
  std::size_t position = 0;
  std::optional<CliticPlacement> clitic_placement;
  std::optional<std::string> gold_ref;
  bool pragmatic_override = false;
  std::optional<std::string> surface;

  bool operator==(const ReferringExpression&) const = default;
};

/// Span of the verbal form(s) carrying tense and/or agreement, including an
/// agreeing past participle, plus the agreement features they realize. The
/// features are annotated, not parsed: the engine consumes analyzed
/// structure, never raw text.
struct AgreementWindow {
  std::size_t start = 0;
  std::size_t end = 0;
  MorphFeatures features;

  bool operator==(const AgreementWindow&) const = default;
};

struct Clause {
  std::vector<ReferringExpression> expressions;
  AgreementWindow agreement_window;
  ClauseType clause_type = ClauseType::main;

  bool operator==(const Clause&) const = default;

  /// Index of the expression with role=subject, if any.
  std::optional<std::size_t> subject_index() const {
    for (std::size_t i = 0; i < expressions.size(); ++i)
      if (expressions[i].role == Role::subject) return i;
    return std::nullopt;
  }
};

struct Utterance {
  std::string id;
  std::vector<Clause> clauses;

  bool operator==(const Utterance&) const = default;

  /// Index of the clause marked main; clauses.size() if none is marked.
  std::size_t main_clause_index() const {
    for (std::size_t i = 0; i < clauses.size(); ++i)
      if (clauses[i].clause_type == ClauseType::main) return i;
    return clauses.size();
  }
};

struct Discourse {
  std::vector<Entity> entities;
  std::vector<Utterance> utterances;
  Language language = Language::italian;

  bool operator==(const Discourse&) const = default;
};

/// Entity lookup by id. Built once per discourse; holds pointers into the
/// discourse it was built from, which must outlive it.
class EntityTable {
 public:
  EntityTable() = default;
  explicit EntityTable(const std::vector<Entity>& entities) {
    for (const Entity& e : entities) by_id_.emplace(e.id, &e);
  }

  const Entity* find(std::string_view id) const {
    auto it = by_id_.find(std::string(id));
    return it == by_id_.end() ? nullptr : it->second;
  }

  /// Lookup that treats a missing entity as a programming error.
  const Entity& at(std::string_view id) const {
    const Entity* e = find(id);
    if (!e) throw std::out_of_range("unknown entity id: " + std::string(id));
    return *e;
  }

 private:
  std::unordered_map<std::string, const Entity*> by_id_;
};

/// One breached invariant found by validate(). Locations are filled in as
/// far as they apply (a duplicate entity id has no utterance).
struct Violation {
  std::string code;
  std::string message;
  std::optional<std::string> utterance_id;
  std::optional<std::size_t> clause_index;
  std::optional<std::size_t> expression_index;

  bool operator==(const Violation&) const = default;
};

inline bool is_clitic_form(Form f) {
  return f == Form::clitic_pronoun || f == Form::reflexive_clitic;
}

/// Pronominal forms, reflexives included. Rule R1's pronoun count excludes
/// reflexives separately (they carry no centering choice).
inline bool is_pronoun_form(Form f) {
  return f == Form::null_subject || f == Form::clitic_pronoun ||
         f == Form::strong_pronoun || f == Form::reflexive_clitic;
}

/// True iff every feature field present in `features` matches the entity.
/// Entities are discourse referents and count as third person; a first or
/// second person feature never matches.
/// Throws std::invalid_argument for segment entities, which have no
/// morphology.
inline bool compatible(const MorphFeatures& features, const Entity& entity) {
  if (entity.kind == EntityKind::segment)
    throw std::invalid_argument("segment entities have no morphology: " +
                                entity.id);
  if (features.gender && *features.gender != entity.gender) return false;
  if (features.number && *features.number != entity.number) return false;
  if (features.person && *features.person != Person::third) return false;
  return true;
}

/// Merge of expression features with the clause agreement features, used
/// when testing a subject hypothesis against the agreement window.
inline MorphFeatures merge_features(const MorphFeatures& a,
                                    const MorphFeatures& b) {
  MorphFeatures out = a;
  if (!out.gender) out.gender = b.gender;
  if (!out.number) out.number = b.number;
  if (!out.person) out.person = b.person;
  return out;
}

/// Checks every structural invariant of the discourse model. Deterministic
/// and idempotent; violations are data, not failures.
inline std::vector<Violation> validate(const Discourse& d) {
  std::vector<Violation> out;
  auto add = [&out](std::string code, std::string message,
                    std::optional<std::string> utt = std::nullopt,
                    std::optional<std::size_t> clause = std::nullopt,
                    std::optional<std::size_t> expr = std::nullopt) {
    out.push_back(Violation{std::move(code), std::move(message),
                            std::move(utt), clause, expr});
  };

  std::unordered_map<std::string, int> entity_ids;
  for (const Entity& e : d.entities) {
    if (++entity_ids[e.id] == 2)
      add("duplicate_entity", "entity id declared more than once: " + e.id);
  }

  std::unordered_map<std::string, int> utterance_ids;
  for (const Utterance& u : d.utterances) {
    if (++utterance_ids[u.id] == 2)
      add("duplicate_utterance", "utterance id used more than once: " + u.id,
          u.id);

    if (u.clauses.empty()) {
      add("no_clauses", "utterance has no clauses", u.id);
      continue;
    }
    std::size_t main_count = 0;
    for (const Clause& c : u.clauses)
      if (c.clause_type == ClauseType::main) ++main_count;
    if (main_count != 1)
      add("main_clause_count",
          "utterance must mark exactly one clause as main, found " +
              std::to_string(main_count),
          u.id);

    for (std::size_t ci = 0; ci < u.clauses.size(); ++ci) {
      const Clause& c = u.clauses[ci];
      if (c.agreement_window.start > c.agreement_window.end)
        add("window_order", "agreement window start exceeds end", u.id, ci);

      std::size_t subject_count = 0;
      std::optional<std::size_t> prev_position;
      for (std::size_t ei = 0; ei < c.expressions.size(); ++ei) {
        const ReferringExpression& ex = c.expressions[ei];
        if (ex.role == Role::subject) ++subject_count;

        if (ex.form == Form::null_subject) {
          if (ex.role != Role::subject)
            add("null_subject_role", "null subject must have role=subject",
                u.id, ci, ei);
          if (ex.clitic_placement)
            add("null_subject_placement",
                "null subject may not carry clitic placement", u.id, ci, ei);
          if (d.language == Language::english)
            add("english_null_subject",
                "null subjects are not available in English documents", u.id,
                ci, ei);
        }
        if (is_clitic_form(ex.form) != ex.clitic_placement.has_value())
          add("clitic_placement",
              is_clitic_form(ex.form)
                  ? "clitic lacks a placement annotation"
                  : "clitic placement on a non-clitic form",
              u.id, ci, ei);
        if (prev_position && ex.position <= *prev_position)
          add("position_order",
              "expression positions must be strictly increasing within a "
              "clause",
              u.id, ci, ei);
        prev_position = ex.position;

        if (ex.gold_ref && !entity_ids.count(*ex.gold_ref))
          add("undeclared_entity",
              "gold_ref names undeclared entity: " + *ex.gold_ref, u.id, ci,
              ei);
      }
      if (subject_count > 1)
        add("subject_count", "clause has more than one subject", u.id, ci);
    }
  }
  return out;
}

}  // namespace centering
