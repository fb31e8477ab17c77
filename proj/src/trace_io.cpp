#include "bbnet/trace_io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "bbnet/errors.hpp"

namespace bbnet::protocol {

void write_trace_csv(const std::vector<Trace>& traces,
                     const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw parse_error("cannot open for writing: " + file.string());
  out << "trial,mapping,cycle,node,tag,origin,value\n";
  for (const Trace& trace : traces) {
    for (std::size_t c = 0; c < trace.per_cycle.size(); ++c) {
      const auto& records = trace.per_cycle[c];
      for (std::size_t v = 0; v < records.size(); ++v) {
        const Record& r = records[v];
        out << trace.trial_index << ',' << trace.mapping_index << ',' << (c + 1)
            << ',' << v << ',' << tag_letter(r.tag) << ',' << r.origin << ','
            << r.value << '\n';
      }
    }
  }
}

void write_prevalence_csv(const std::vector<SampleSeries>& series,
                          const std::vector<double>& mean_tau,
                          std::uint32_t c0, std::uint32_t start_instant,
                          const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw parse_error("cannot open for writing: " + file.string());
  out << "mapping,trial,cycle,instant,tau,tau_tag\n";
  char buf[160];
  for (const SampleSeries& s : series) {
    for (std::size_t i = 0; i < s.tau_value.size(); ++i) {
      const std::uint32_t instant = start_instant + static_cast<std::uint32_t>(i);
      std::snprintf(buf, sizeof(buf), "%u,%u,%u,%u,%.10g,%.10g\n", s.mapping_index,
                    s.trial_index, c0 + 1 + instant, instant, s.tau_value[i],
                    s.tau_tag[i]);
      out << buf;
    }
  }
  for (std::size_t i = 0; i < mean_tau.size(); ++i) {
    const std::uint32_t instant = start_instant + static_cast<std::uint32_t>(i);
    std::snprintf(buf, sizeof(buf), "-1,-1,%u,%u,%.10g,\n", c0 + 1 + instant,
                  instant, mean_tau[i]);
    out << buf;
  }
}

std::vector<Trace> read_trace_csv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw parse_error("cannot open trace file: " + file.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("trial,mapping,cycle", 0) != 0) {
    throw parse_error(file.string() + ": missing trace header");
  }
  std::map<std::pair<std::uint32_t, std::uint32_t>, Trace> by_run;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::uint32_t trial, mapping, cycle, node;
    char tag;
    std::uint32_t origin;
    Value value;
    char c1, c2, c3, c4, c5, c6;
    if (!(row >> trial >> c1 >> mapping >> c2 >> cycle >> c3 >> node >> c4 >> tag >>
          c5 >> origin >> c6 >> value) ||
        c1 != ',' || c2 != ',' || c3 != ',' || c4 != ',' || c5 != ',' || c6 != ',') {
      throw parse_error(file.string() + ":" + std::to_string(line_no) +
                        ": bad trace row");
    }
    Trace& trace = by_run[{trial, mapping}];
    trace.trial_index = trial;
    trace.mapping_index = mapping;
    if (trace.per_cycle.size() < cycle) trace.per_cycle.resize(cycle);
    auto& records = trace.per_cycle[cycle - 1];
    if (records.size() <= node) records.resize(node + 1);
    Record r;
    switch (tag) {
      case 'S': r.tag = Tag::Susceptible; break;
      case 'I': r.tag = Tag::Infected; break;
      case 'R': r.tag = Tag::Raw; break;
      default:
        throw parse_error(file.string() + ":" + std::to_string(line_no) +
                          ": unknown tag");
    }
    r.origin = origin;
    r.value = value;
    records[node] = r;
  }
  std::vector<Trace> traces;
  for (auto& [key, trace] : by_run) {
    trace.cycles = static_cast<std::uint32_t>(trace.per_cycle.size());
    if (!trace.per_cycle.empty()) {
      trace.finals.clear();
      for (const Record& r : trace.per_cycle.back()) trace.finals.push_back(r.value);
      Value best = 0;
      for (const Record& r : trace.per_cycle.front()) best = std::max(best, r.value);
      trace.global_max = best;
    }
    traces.push_back(std::move(trace));
  }
  return traces;
}

}  // namespace bbnet::protocol
