#pragma once

// Text syntax:
//
//   formula := "true" | "false" | "#" ident | Pred "(" vars ")" | Pred
//            | "~" formula | "box" formula | "dia" formula
//            | "forall" var "." formula | "exists" var "." formula
//            | formula "&" formula | formula "|" formula
//            | formula "->" formula | formula "<->" formula | "(" formula ")"
//
// Prefix operators bind tightest, then &, |, -> (right associative), <->.
// `dia A` and `A <-> B` are expanded on the way in.

#include <string>
#include <string_view>

#include "qmlfix/formula.hpp"

namespace qmlfix {

/// Parses against a fixed signature: unknown predicates and arity mismatches
/// are errors.
Formula parse(std::string_view text, const PredicateSignature& sig);

/// Parses and infers the signature from usage.
Formula parse(std::string_view text);

/// Canonical text. parse(to_string(f)) == f for every formula the parser can
/// produce. Domain constants print as `@name`, which the parser rejects.
std::string to_string(const Formula& f);

}  // namespace qmlfix
