#pragma once

// Line-oriented model files:
//
//   worlds: 3
//   edge: 2 1
//   domain: 0 a b
//   fact: 0 P a
//
// `#` starts a comment. Facts not listed are false. The signature is taken
// from the facts.

#include <iosfwd>
#include <string>
#include <string_view>

#include "qmlfix/kripke.hpp"

namespace qmlfix {

/// Throws Syntax on malformed lines and InvalidModel (listing every
/// violation) when the model fails validate_model.
KripkeModel read_model(std::istream& in);
KripkeModel parse_model(std::string_view text);
KripkeModel load_model(const std::string& path);

void write_model(std::ostream& out, const KripkeModel& m);
std::string model_to_string(const KripkeModel& m);

}  // namespace qmlfix
