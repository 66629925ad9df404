#include "qmlfix/model_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <vector>

#include "qmlfix/error.hpp"

namespace qmlfix {
namespace {

struct RawFact {
  WorldId world;
  std::string predicate;
  std::vector<std::string> args;
};

std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream ss{std::string(line)};
  std::string w;
  while (ss >> w) out.push_back(w);
  return out;
}

std::size_t parse_index(const std::string& word, std::size_t line_no) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
  if (ec != std::errc() || ptr != word.data() + word.size()) {
    throw Error(ErrorCode::Syntax, "line " + std::to_string(line_no) + ": expected a number, got '" + word + "'");
  }
  return value;
}

// Digit runs compare by value, so c2 < c10 and 9 < 10.
bool natural_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
    const bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
    if (da && db) {
      std::size_t ei = i, ej = j;
      while (ei < a.size() && std::isdigit(static_cast<unsigned char>(a[ei])) != 0) ++ei;
      while (ej < b.size() && std::isdigit(static_cast<unsigned char>(b[ej])) != 0) ++ej;
      std::string_view ra(a.data() + i, ei - i), rb(b.data() + j, ej - j);
      while (ra.size() > 1 && ra.front() == '0') ra.remove_prefix(1);
      while (rb.size() > 1 && rb.front() == '0') rb.remove_prefix(1);
      if (ra.size() != rb.size()) return ra.size() < rb.size();
      if (ra != rb) return ra < rb;
      i = ei;
      j = ej;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  if ((a.size() - i) != (b.size() - j)) return a.size() - i < b.size() - j;
  return a < b;
}

}  // namespace

KripkeModel read_model(std::istream& in) {
  std::optional<std::size_t> worlds;
  std::vector<std::pair<WorldId, WorldId>> edges;
  std::vector<std::pair<WorldId, std::vector<std::string>>> domains;
  std::vector<RawFact> facts;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto colon = line.find(':');
    if (colon == std::string::npos) {
      if (split_words(line).empty()) continue;
      throw Error(ErrorCode::Syntax, "line " + std::to_string(line_no) + ": expected 'key: values'");
    }
    const auto key = split_words(line.substr(0, colon));
    const auto vals = split_words(line.substr(colon + 1));
    if (key.size() != 1) throw Error(ErrorCode::Syntax, "line " + std::to_string(line_no) + ": bad key");
    const std::string& k = key[0];
    auto need = [&](bool ok, const char* what) {
      if (!ok) throw Error(ErrorCode::Syntax, "line " + std::to_string(line_no) + ": " + what);
    };
    if (k == "worlds") {
      need(vals.size() == 1, "worlds takes one number");
      need(!worlds.has_value(), "duplicate worlds header");
      worlds = parse_index(vals[0], line_no);
    } else if (k == "edge") {
      need(vals.size() == 2, "edge takes two worlds");
      edges.emplace_back(parse_index(vals[0], line_no), parse_index(vals[1], line_no));
    } else if (k == "domain") {
      need(!vals.empty(), "domain needs a world");
      domains.emplace_back(parse_index(vals[0], line_no), std::vector<std::string>(vals.begin() + 1, vals.end()));
    } else if (k == "fact") {
      need(vals.size() >= 2, "fact needs a world and a predicate");
      need(std::isupper(static_cast<unsigned char>(vals[1][0])) != 0, "predicate names start with an uppercase letter");
      facts.push_back({parse_index(vals[0], line_no), vals[1], std::vector<std::string>(vals.begin() + 2, vals.end())});
    } else {
      throw Error(ErrorCode::Syntax, "line " + std::to_string(line_no) + ": unknown key '" + k + "'");
    }
  }
  if (!worlds) throw Error(ErrorCode::Syntax, "missing 'worlds:' header");

  PredicateSignature sig;
  // First use fixes the arity; later conflicting facts surface as violations.
  for (const RawFact& f : facts) {
    if (!sig.contains(f.predicate)) sig.declare(f.predicate, f.args.size());
  }

  KripkeModel m(*worlds, sig);
  for (const auto& [w, v] : edges) m.add_edge(w, v);
  for (const auto& [w, names] : domains) {
    for (const std::string& c : names) m.add_to_domain(w, m.add_constant(c));
  }
  for (const RawFact& f : facts) {
    std::vector<ConstId> args;
    for (const std::string& c : f.args) args.push_back(m.add_constant(c));
    m.add_fact(f.world, f.predicate, std::move(args));
  }

  const auto violations = validate_model(m);
  if (!violations.empty()) {
    std::string msg = std::to_string(violations.size()) + " violation(s):";
    for (const Violation& v : violations) msg += " [" + v.kind + "] " + v.detail + ";";
    throw Error(ErrorCode::InvalidModel, msg);
  }
  return m;
}

KripkeModel parse_model(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_model(in);
}

KripkeModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open model file " + path);
  return read_model(in);
}

void write_model(std::ostream& out, const KripkeModel& m) {
  // Constants are listed by name, not by id, so the output does not depend
  // on the order they were added in.
  std::vector<ConstId> by_name(m.constant_count());
  for (ConstId c = 0; c < by_name.size(); ++c) by_name[c] = c;
  std::sort(by_name.begin(), by_name.end(),
            [&](ConstId x, ConstId y) { return natural_less(m.constant_name(x), m.constant_name(y)); });
  std::vector<std::size_t> rank(m.constant_count());
  for (std::size_t r = 0; r < by_name.size(); ++r) rank[by_name[r]] = r;

  out << "worlds: " << m.world_count() << '\n';
  for (const auto& [w, v] : m.edges()) out << "edge: " << w << ' ' << v << '\n';
  for (WorldId w = 0; w < m.world_count(); ++w) {
    std::vector<std::size_t> dom;
    for (ConstId c : m.domain(w)) dom.push_back(rank[c]);
    std::sort(dom.begin(), dom.end());
    out << "domain: " << w;
    for (std::size_t r : dom) out << ' ' << m.constant_name(by_name[r]);
    out << '\n';
  }
  // Facts by world, predicate name, then tuple.
  for (WorldId w = 0; w < m.world_count(); ++w) {
    for (const auto& [name, arity] : m.signature().entries()) {
      std::vector<std::vector<std::size_t>> tuples;
      for (const Fact& f : m.facts()) {
        if (f.world != w || f.predicate != name || f.args.size() != arity) continue;
        std::vector<std::size_t> t;
        for (ConstId c : f.args) t.push_back(rank[c]);
        tuples.push_back(std::move(t));
      }
      std::sort(tuples.begin(), tuples.end());
      tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
      for (const auto& t : tuples) {
        out << "fact: " << w << ' ' << name;
        for (std::size_t r : t) out << ' ' << m.constant_name(by_name[r]);
        out << '\n';
      }
    }
  }
}

std::string model_to_string(const KripkeModel& m) {
  std::ostringstream out;
  write_model(out, m);
  return out.str();
}

}  // namespace qmlfix
