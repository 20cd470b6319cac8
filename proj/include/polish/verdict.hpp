#pragma once

#include <polish/rational.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace polish {

/// Three-valued outcome of a bounded verifier. The propositions being
/// checked are genuinely undecidable; a verifier either refutes them with a
/// concrete witness, confirms them as far as it looked, or reports the
/// bounds it searched without a verdict.
enum class Status { Holds, Fails, Unknown };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::Holds: return "holds";
        case Status::Fails: return "fails";
        default: return "unknown";
    }
}

/// Structured witness payload: a kind tag plus named indices / values,
/// rendered deterministically for reports and golden tests.
struct Witness {
    std::string kind;
    std::vector<std::pair<std::string, Index>> indices;
    std::vector<std::pair<std::string, Rational>> values;

    Witness() = default;
    explicit Witness(std::string k) : kind(std::move(k)) {}

    Witness& idx(std::string name, Index v) {
        indices.emplace_back(std::move(name), std::move(v));
        return *this;
    }
    Witness& val(std::string name, Rational v) {
        values.emplace_back(std::move(name), std::move(v));
        return *this;
    }

    std::string render() const {
        std::ostringstream os;
        os << kind;
        for (const auto& [name, v] : indices) os << ' ' << name << '=' << v.str();
        for (const auto& [name, v] : values) os << ' ' << name << '=' << format_rational(v);
        return os.str();
    }
};

/// The bounds a verifier actually searched.
struct Bounds {
    std::optional<unsigned long long> n;
    std::optional<unsigned> precision;
    std::optional<unsigned long long> depth;
    std::optional<unsigned long long> bound;

    std::string render() const {
        std::ostringstream os;
        bool first = true;
        auto put = [&](const char* name, auto const& v) {
            if (!v) return;
            if (!first) os << ' ';
            os << name << '=' << *v;
            first = false;
        };
        put("n", n);
        put("k", precision);
        put("depth", depth);
        put("bound", bound);
        if (first) os << "none";
        return os.str();
    }
};

struct Verdict {
    Status status = Status::Unknown;
    std::optional<Witness> witness;  // mandatory for Fails, optional detail otherwise
    Bounds bounds;

    static Verdict holds(Bounds b) { return {Status::Holds, std::nullopt, std::move(b)}; }
    static Verdict holds(Witness detail, Bounds b) {
        return {Status::Holds, std::move(detail), std::move(b)};
    }
    static Verdict fails(Witness w, Bounds b) {
        return {Status::Fails, std::move(w), std::move(b)};
    }
    static Verdict unknown(Bounds b) { return {Status::Unknown, std::nullopt, std::move(b)}; }
    static Verdict unknown(Witness detail, Bounds b) {
        return {Status::Unknown, std::move(detail), std::move(b)};
    }

    bool is_holds() const { return status == Status::Holds; }
    bool is_fails() const { return status == Status::Fails; }
    bool is_unknown() const { return status == Status::Unknown; }
};

}  // namespace polish
