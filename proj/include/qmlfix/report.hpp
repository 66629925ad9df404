#pragma once

// Report writers shared by the CLI. `Lines` output is one `key<TAB>value...`
// record per line; `Text` is for people.

#include <iosfwd>
#include <string>
#include <vector>

#include "qmlfix/fixpoint.hpp"
#include "qmlfix/harness.hpp"
#include "qmlfix/kripke.hpp"
#include "qmlfix/smorynski.hpp"

namespace qmlfix {

enum class ReportFormat { Text, Lines };

void write_trace(std::ostream& out, const FixpointTrace& trace, ReportFormat fmt);
void write_sigma_result(std::ostream& out, const SigmaFixpointResult& r, ReportFormat fmt);
void write_frame_report(std::ostream& out, const FrameReport& r, ReportFormat fmt);
void write_truth_table(std::ostream& out, const std::vector<bool>& by_world, ReportFormat fmt);
void write_refutation(std::ostream& out, const RefutationReport& r, ReportFormat fmt);
void write_verification(std::ostream& out, const FixpointVerification& v, ReportFormat fmt);

}  // namespace qmlfix
