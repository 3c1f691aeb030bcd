#pragma once
// Entity kinds, class tiers and the relation taxonomy shared by the three
// modular ontologies, plus the edge-validity rules for the knowledge graph.
//
// Relations partition into mathematical (element-of), causal (leads-to,
// limits) and syntactic (verifies, compares). Six content kinds are tiered:
// extrinsic (correlation model, previous work, key argument) and intrinsic
// (method, observation, theory); model, paradigm, article and field sit
// outside the tiering and act as plain graph nodes.

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "kuhn/error.hpp"

namespace kuhn {

enum class EntityKind {
    Method,
    Observation,
    Theory,
    CorrelationModel,
    PreviousWork,
    KeyArgument,
    Model,
    Paradigm,
    Article,
    Field,
};

inline constexpr std::array<EntityKind, 10> kAllEntityKinds = {
    EntityKind::Method,       EntityKind::Observation, EntityKind::Theory,
    EntityKind::CorrelationModel, EntityKind::PreviousWork, EntityKind::KeyArgument,
    EntityKind::Model,        EntityKind::Paradigm,    EntityKind::Article,
    EntityKind::Field,
};

enum class ClassTier { Extrinsic, Intrinsic, ObjectTier };

enum class RelationKind { ElementOf, LeadsTo, Limits, Verifies, Compares };

inline constexpr std::array<RelationKind, 5> kAllRelationKinds = {
    RelationKind::ElementOf, RelationKind::LeadsTo, RelationKind::Limits,
    RelationKind::Verifies,  RelationKind::Compares,
};

enum class RelationCategory { Mathematical, Causal, Syntactic };

inline std::string_view entity_kind_name(EntityKind k) {
    switch (k) {
        case EntityKind::Method: return "method";
        case EntityKind::Observation: return "observation";
        case EntityKind::Theory: return "theory";
        case EntityKind::CorrelationModel: return "correlation-model";
        case EntityKind::PreviousWork: return "previous-work";
        case EntityKind::KeyArgument: return "key-argument";
        case EntityKind::Model: return "model";
        case EntityKind::Paradigm: return "paradigm";
        case EntityKind::Article: return "article";
        case EntityKind::Field: return "field";
    }
    return "?";
}

inline std::optional<EntityKind> parse_entity_kind(std::string_view s) {
    for (EntityKind k : kAllEntityKinds)
        if (entity_kind_name(k) == s) return k;
    return std::nullopt;
}

inline std::string_view relation_kind_name(RelationKind r) {
    switch (r) {
        case RelationKind::ElementOf: return "element-of";
        case RelationKind::LeadsTo: return "leads-to";
        case RelationKind::Limits: return "limits";
        case RelationKind::Verifies: return "verifies";
        case RelationKind::Compares: return "compares";
    }
    return "?";
}

inline std::optional<RelationKind> parse_relation_kind(std::string_view s) {
    for (RelationKind r : kAllRelationKinds)
        if (relation_kind_name(r) == s) return r;
    return std::nullopt;
}

// Three-way partition of the five relation kinds: 1 mathematical,
// 2 causal, 2 syntactic. Total by construction.
inline RelationCategory relation_category(RelationKind r) {
    switch (r) {
        case RelationKind::ElementOf: return RelationCategory::Mathematical;
        case RelationKind::LeadsTo: return RelationCategory::Causal;
        case RelationKind::Limits: return RelationCategory::Causal;
        case RelationKind::Verifies: return RelationCategory::Syntactic;
        case RelationKind::Compares: return RelationCategory::Syntactic;
    }
    throw Error(ErrorCode::InvalidArgs, "unknown relation kind");
}

// True for the six kinds that carry content inside the formalism ontology.
inline bool is_content_kind(EntityKind k) {
    switch (k) {
        case EntityKind::Method:
        case EntityKind::Observation:
        case EntityKind::Theory:
        case EntityKind::CorrelationModel:
        case EntityKind::PreviousWork:
        case EntityKind::KeyArgument:
            return true;
        default:
            return false;
    }
}

// Tier assignment for the six content kinds. Model, paradigm, article and
// field are not tiered content and raise UnmappedKind.
inline ClassTier tier_of(EntityKind k) {
    switch (k) {
        case EntityKind::CorrelationModel:
        case EntityKind::PreviousWork:
        case EntityKind::KeyArgument:
            return ClassTier::Extrinsic;
        case EntityKind::Method:
        case EntityKind::Observation:
        case EntityKind::Theory:
            return ClassTier::Intrinsic;
        default:
            throw Error(ErrorCode::UnmappedKind,
                        std::string(entity_kind_name(k)) +
                            " is not a tiered content kind");
    }
}

// A knowledge-graph node. id is opaque and unique within one corpus.
struct Entity {
    std::string id;
    EntityKind kind = EntityKind::Method;
    std::string label;
    std::string field_id; // empty when not field-scoped

    friend bool operator==(const Entity&, const Entity&) = default;
};

// A typed edge. provenance names the article that asserted it, if any.
struct Edge {
    std::string src;
    std::string dst;
    RelationKind relation = RelationKind::ElementOf;
    std::string provenance; // article id, empty when structural

    friend bool operator==(const Edge&, const Edge&) = default;
};

// Outcome of validate_edge. rule is empty iff the edge is accepted;
// otherwise it names the violated rule.
struct EdgeVerdict {
    bool accepted = false;
    std::string rule;

    static EdgeVerdict ok() { return {true, {}}; }
    static EdgeVerdict reject(std::string r) { return {false, std::move(r)}; }
};

namespace detail {

// Permitted (src kind, dst kind) pairs per relation.
//   element-of: content kind -> model | paradigm, plus article -> field
//               (an article is a member of its field's corpus)
//   leads-to:   method | observation | key-argument -> observation | theory
//               | correlation model
//   limits:     observation | key-argument -> model | method | theory
//   verifies:   method | observation -> theory | correlation model
//   compares:   same-kind pairs only (checked separately)
inline bool endpoint_pair_allowed(RelationKind rel, EntityKind src, EntityKind dst) {
    switch (rel) {
        case RelationKind::ElementOf:
            if (src == EntityKind::Article) return dst == EntityKind::Field;
            return is_content_kind(src) &&
                   (dst == EntityKind::Model || dst == EntityKind::Paradigm);
        case RelationKind::LeadsTo:
            return (src == EntityKind::Method || src == EntityKind::Observation ||
                    src == EntityKind::KeyArgument) &&
                   (dst == EntityKind::Observation || dst == EntityKind::Theory ||
                    dst == EntityKind::CorrelationModel);
        case RelationKind::Limits:
            return (src == EntityKind::Observation ||
                    src == EntityKind::KeyArgument) &&
                   (dst == EntityKind::Model || dst == EntityKind::Method ||
                    dst == EntityKind::Theory);
        case RelationKind::Verifies:
            return (src == EntityKind::Method || src == EntityKind::Observation) &&
                   (dst == EntityKind::Theory || dst == EntityKind::CorrelationModel);
        case RelationKind::Compares:
            return src == dst;
    }
    return false;
}

inline bool src_kind_allowed(RelationKind rel, EntityKind src) {
    for (EntityKind dst : kAllEntityKinds)
        if (endpoint_pair_allowed(rel, src, dst)) return true;
    return false;
}

} // namespace detail

// Checks one edge against the endpoint table. Both endpoints must match
// edge.src/edge.dst; anything else is a DanglingEndpoint error, not a
// verdict. Rule names, in evaluation order: SameKindRequired (compares
// across kinds), SelfLoopForbidden (causal edge onto itself),
// SrcKindNotAllowed, DstKindNotAllowed.
inline EdgeVerdict validate_edge(const Edge& edge, const Entity& src,
                                 const Entity& dst) {
    if (src.id != edge.src)
        throw Error(ErrorCode::DanglingEndpoint,
                    "source entity '" + src.id + "' does not match edge src '" +
                        edge.src + "'");
    if (dst.id != edge.dst)
        throw Error(ErrorCode::DanglingEndpoint,
                    "destination entity '" + dst.id +
                        "' does not match edge dst '" + edge.dst + "'");

    if (edge.relation == RelationKind::Compares && src.kind != dst.kind)
        return EdgeVerdict::reject("SameKindRequired");

    if (relation_category(edge.relation) == RelationCategory::Causal &&
        edge.src == edge.dst)
        return EdgeVerdict::reject("SelfLoopForbidden");

    if (!detail::endpoint_pair_allowed(edge.relation, src.kind, dst.kind)) {
        if (!detail::src_kind_allowed(edge.relation, src.kind))
            return EdgeVerdict::reject("SrcKindNotAllowed");
        return EdgeVerdict::reject("DstKindNotAllowed");
    }
    return EdgeVerdict::ok();
}

} // namespace kuhn
