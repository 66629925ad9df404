#include "qmlfix/report.hpp"

#include <ostream>

#include "qmlfix/model_io.hpp"
#include "qmlfix/parser.hpp"

namespace qmlfix {
namespace {

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::string join_holes(const std::vector<std::string>& holes) {
  std::string s;
  for (const auto& h : holes) s += (s.empty() ? "#" : ",#") + h;
  return s;
}

std::string join_formulas(const std::vector<Formula>& fs) {
  std::string s;
  for (const auto& f : fs) s += (s.empty() ? "" : " ; ") + to_string(f);
  return s;
}

void write_derivation(std::ostream& out, const Derivation& d, std::size_t depth, ReportFormat fmt) {
  if (fmt == ReportFormat::Lines) {
    out << "step\t" << depth << '\t' << d.rule << '\t' << join_holes(d.holes) << '\t' << join_formulas(d.inputs)
        << '\t' << join_formulas(d.outputs) << '\n';
  } else {
    out << std::string(2 * depth + 2, ' ') << "[" << d.rule << "] " << join_holes(d.holes) << ": "
        << join_formulas(d.inputs) << "  ==>  " << join_formulas(d.outputs) << '\n';
  }
  for (const Derivation& p : d.premises) write_derivation(out, p, depth + 1, fmt);
}

void write_sweep(std::ostream& out, const char* label, const SweepResult& s, ReportFormat fmt) {
  const std::size_t passed = s.models - s.failing_models;
  if (fmt == ReportFormat::Lines) {
    out << label << '\t' << passed << '\t' << s.models << '\t' << s.worlds_checked << '\n';
  } else {
    out << label << ": " << passed << "/" << s.models << " models pass (" << s.worlds_checked
        << " worlds checked)\n";
  }
}

}  // namespace

void write_trace(std::ostream& out, const FixpointTrace& trace, ReportFormat fmt) {
  if (fmt == ReportFormat::Lines) {
    out << "hole\t" << trace.target.hole << '\n';
    out << "n\t" << trace.n << '\n';
    out << "input\t" << to_string(trace.target.formula) << '\n';
    for (std::size_t k = 0; k < trace.stages.size(); ++k) {
      out << "truncation\t" << k << '\t' << to_string(trace.truncations[k]) << '\n';
      out << "stage\t" << k << '\t' << to_string(trace.stages[k]) << '\n';
    }
    out << "result\t" << to_string(trace.result) << '\n';
    return;
  }
  out << "A(#" << trace.target.hole << ") = " << to_string(trace.target.formula) << "\n";
  out << "fixed point under box^" << trace.n + 1 << " false:\n";
  for (std::size_t k = 0; k < trace.stages.size(); ++k) {
    out << "  A^T(" << k << ") = " << to_string(trace.truncations[k]) << '\n';
    out << "  A_" << k << "    = " << to_string(trace.stages[k]) << '\n';
  }
  out << "result: " << to_string(trace.result) << '\n';
}

void write_sigma_result(std::ostream& out, const SigmaFixpointResult& r, ReportFormat fmt) {
  if (fmt == ReportFormat::Lines) {
    out << "hole\t" << r.hole << '\n';
    out << "input\t" << to_string(r.input) << '\n';
    write_derivation(out, r.derivation, 0, fmt);
    out << "result\t" << to_string(r.result) << '\n';
    return;
  }
  out << "A(#" << r.hole << ") = " << to_string(r.input) << "\n";
  out << "derivation:\n";
  write_derivation(out, r.derivation, 0, fmt);
  out << "result: " << to_string(r.result) << '\n';
}

void write_frame_report(std::ostream& out, const FrameReport& r, ReportFormat fmt) {
  std::string classes;
  for (FrameClass c : {FrameClass::FI, FrameClass::FIFD, FrameClass::FH}) {
    if (r.classes.count(c) != 0) classes += (classes.empty() ? "" : ",") + to_string(c);
  }
  if (classes.empty()) classes = "-";
  if (fmt == ReportFormat::Lines) {
    out << "transitive\t" << yes_no(r.transitive) << '\n';
    out << "irreflexive\t" << yes_no(r.irreflexive) << '\n';
    out << "conversely-well-founded\t" << yes_no(r.conversely_well_founded) << '\n';
    if (r.heights) {
      for (std::size_t w = 0; w < r.heights->size(); ++w) out << "height\t" << w << '\t' << (*r.heights)[w] << '\n';
      out << "frame-height\t" << *r.frame_height << '\n';
    }
    out << "classes\t" << classes << '\n';
    return;
  }
  out << "transitive: " << yes_no(r.transitive) << '\n';
  out << "irreflexive: " << yes_no(r.irreflexive) << '\n';
  out << "conversely well-founded: " << yes_no(r.conversely_well_founded) << '\n';
  if (r.frame_height) {
    out << "height: " << *r.frame_height << '\n';
  } else {
    out << "height: undefined (cyclic frame)\n";
  }
  out << "classes: " << classes << '\n';
}

void write_truth_table(std::ostream& out, const std::vector<bool>& by_world, ReportFormat fmt) {
  bool valid = true;
  for (std::size_t w = 0; w < by_world.size(); ++w) {
    valid = valid && by_world[w];
    if (fmt == ReportFormat::Lines) {
      out << "world\t" << w << '\t' << (by_world[w] ? "true" : "false") << '\n';
    } else {
      out << "world " << w << ": " << (by_world[w] ? "true" : "false") << '\n';
    }
  }
  if (fmt == ReportFormat::Lines) {
    out << "valid\t" << (valid ? "true" : "false") << '\n';
  } else {
    out << (valid ? "valid" : "not valid") << '\n';
  }
}

void write_refutation(std::ostream& out, const RefutationReport& r, ReportFormat fmt) {
  if (fmt == ReportFormat::Lines) {
    out << "candidate\t" << to_string(r.candidate) << '\n';
    out << "k-max\t" << r.k_max << '\n';
    for (const RefutationRow& row : r.rows) {
      out << "row\t" << row.k << '\t' << (row.valid ? "valid" : "refuted") << '\t'
          << (row.failing_world ? std::to_string(*row.failing_world) : "-") << '\t'
          << (row.parity_holds ? (*row.parity_holds ? "parity-ok" : "parity-broken") : "-") << '\n';
    }
    if (r.refuted_at) {
      out << "refuted\t" << *r.refuted_at << '\t' << *r.failing_world << '\n';
    } else {
      out << "inconclusive\t" << r.k_max << '\n';
    }
    return;
  }
  out << "candidate B = " << to_string(r.candidate) << '\n';
  out << "  k  equation  failing-world  parity\n";
  for (const RefutationRow& row : r.rows) {
    out << "  " << row.k << "  " << (row.valid ? "valid   " : "refuted ") << "  "
        << (row.failing_world ? std::to_string(*row.failing_world) : "-") << "              "
        << (row.parity_holds ? (*row.parity_holds ? "even-worlds" : "BROKEN") : "-") << '\n';
  }
  if (r.refuted_at) {
    out << "refuted at k = " << *r.refuted_at << " (world " << *r.failing_world << ")\n";
  } else {
    out << "inconclusive up to k = " << r.k_max << '\n';
  }
}

void write_verification(std::ostream& out, const FixpointVerification& v, ReportFormat fmt) {
  write_trace(out, v.trace, fmt);
  if (fmt == ReportFormat::Lines) {
    out << "equation\t" << to_string(v.equation) << '\n';
  } else {
    out << "checking: " << to_string(v.equation) << '\n';
  }
  write_sweep(out, "exhaustive", v.exhaustive, fmt);
  write_sweep(out, "random", v.random, fmt);
  if (v.counterexample) {
    if (fmt == ReportFormat::Lines) {
      out << "counterexample\n";
    } else {
      out << "COUNTEREXAMPLE:\n";
    }
    write_model(out, *v.counterexample);
  }
}

}  // namespace qmlfix
