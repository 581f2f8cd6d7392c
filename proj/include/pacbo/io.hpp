#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "pacbo/datagen.hpp"
#include "pacbo/metrics_bounds.hpp"
#include "pacbo/online.hpp"
#include "pacbo/rjmcmc.hpp"

namespace pacbo {

nlohmann::json centers_to_json(const Centers& c);
Centers centers_from_json(const nlohmann::json& j);

/// JSON-lines run record: one "meta" line, one "step" line per t = 1..T and
/// a final "prediction" line holding c_hat_{T+1}. Wall-clock timings are
/// omitted unless requested so that files are reproducible.
void write_run_jsonl(std::ostream& out, const RunRecord& record, bool include_timing = false);
RunRecord read_run_jsonl(std::istream& in);

/// Per-step summary: t,k,loss,cumulative_loss,lambda,acceptance_rate.
void write_run_summary_csv(std::ostream& out, const RunRecord& record);

/// Chain trace: t,n,k_current,k_proposed,alpha,accepted.
void write_trace_csv(std::ostream& out, std::size_t t, const ChainTrace& trace,
                     bool header = true);

/// Stream: t,x1..xd,k_true (k_true column left empty when unknown).
void write_stream_csv(std::ostream& out, const GeneratedStream& stream);
GeneratedStream read_stream_csv(std::istream& in);

/// Regret summary: t,ecl,ocl,regret,bound_cor3,k_true,k_mode.
void write_regret_csv(std::ostream& out, const std::vector<RegretRow>& rows);

/// Splits one CSV line on commas (no quoting).
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace pacbo
