#pragma once

#include <filesystem>
#include <vector>

#include "bbnet/experiment.hpp"

namespace bbnet::protocol {

// trace.csv rows: trial,mapping,cycle,node,tag,origin,value
void write_trace_csv(const std::vector<Trace>& traces,
                     const std::filesystem::path& file);

// prevalence.csv rows: mapping,trial,cycle,instant,tau,tau_tag
// Mean rows (averaged over mappings and trials) use mapping = trial = -1.
void write_prevalence_csv(const std::vector<SampleSeries>& series,
                          const std::vector<double>& mean_tau,
                          std::uint32_t c0, std::uint32_t start_instant,
                          const std::filesystem::path& file);

// Reads trace.csv back into per-(trial,mapping) traces. Metadata that the
// CSV does not carry (seeds, horizon bookkeeping) is left defaulted; the
// caller supplies c0/start/times when it needs instant alignment.
std::vector<Trace> read_trace_csv(const std::filesystem::path& file);

}  // namespace bbnet::protocol
