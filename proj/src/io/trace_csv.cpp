// Copyright 2026 The genesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "genesim/io/trace_csv.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "genesim/error.hpp"
#include "genesim/io/csv.hpp"

namespace genesim::io {

namespace {

constexpr std::array<Strategy, 4> kEffectOrder{Strategy::gs_dominant, Strategy::gs_altruistic, Strategy::os_balanced,
                                               Strategy::os_selfish};

void row(std::ostream& out, std::size_t k, std::string_view kind, std::string_view name, double value) {
  out << k << ',' << kind << ',' << escape_csv_field(name) << ',' << format_number(value) << '\n';
}

std::optional<Strategy> effect_strategy(std::string_view name) {
  for (const auto s : kEffectOrder) {
    if (short_name(s) == name) return s;
  }
  return std::nullopt;
}

}  // namespace

void write_trace_csv(std::ostream& out, const Trace<double>& trace) {
  out << "iteration,kind,name,value\n";
  for (const auto& rec : trace.records) {
    for (Index j = 0; j < rec.gamma.size(); ++j) row(out, rec.k, "gamma", trace.gene_names.at(static_cast<std::size_t>(j)), rec.gamma(j));
    for (Index i = 0; i < rec.r.size(); ++i) row(out, rec.k, "r", trace.organism_names.at(static_cast<std::size_t>(i)), rec.r(i));
    row(out, rec.k, "alpha_gene", "dominant", rec.alpha_gene[0]);
    row(out, rec.k, "alpha_gene", "altruistic", rec.alpha_gene[1]);
    row(out, rec.k, "alpha_organism", "balanced", rec.alpha_organism[0]);
    row(out, rec.k, "alpha_organism", "selfish", rec.alpha_organism[1]);
    for (const auto s : kEffectOrder) {
      if (const auto it = rec.delta_bar.find(s); it != rec.delta_bar.end()) {
        row(out, rec.k, "delta_bar", short_name(s), it->second);
      }
    }
    for (const auto& c : rec.clamps) row(out, rec.k, "clamp", trace.gene_names.at(static_cast<std::size_t>(c.gene)), c.raw);
  }
}

std::string trace_csv(const Trace<double>& trace) {
  std::ostringstream ss;
  write_trace_csv(ss, trace);
  return ss.str();
}

Trace<double> read_trace_csv(std::string_view text, double epsilon, MixMode mode) {
  auto records = parse_csv_records(text);
  if (records.empty() || records.front() != std::vector<std::string>{"iteration", "kind", "name", "value"}) {
    throw ValidationError("trace: missing header 'iteration,kind,name,value'");
  }

  struct Pending {
    std::vector<double> gamma, r;
    std::map<std::string, double> alpha_gene, alpha_organism;
    std::map<Strategy, double> delta_bar;
    std::vector<std::pair<std::string, double>> clamps;
  };
  std::vector<Pending> pending;
  Trace<double> trace;
  trace.epsilon = epsilon;
  trace.mode = mode;

  for (std::size_t line = 1; line < records.size(); ++line) {
    const auto& rec = records[line];
    if (rec.size() == 1 && rec.front().empty()) continue;
    const std::size_t at = line - 1;
    if (rec.size() != 4) throw ValidationError(Issue{"trace: expected 4 fields", at, {}});
    const auto k = parse_number(rec[0]);
    const auto value = parse_number(rec[3]);
    if (!k || *k < 0 || *k != static_cast<double>(static_cast<std::size_t>(*k)) || !value) {
      throw ValidationError(Issue{"trace: malformed iteration or value", at, {}});
    }
    const auto idx = static_cast<std::size_t>(*k);
    if (idx > pending.size()) throw ValidationError(Issue{"trace: iterations must be contiguous from 0", at, {}});
    if (idx == pending.size()) pending.emplace_back();
    auto& p = pending[idx];
    const std::string& kind = rec[1];
    const std::string& name = rec[2];
    if (kind == "gamma") {
      p.gamma.push_back(*value);
      if (idx == 0) trace.gene_names.push_back(name);
    } else if (kind == "r") {
      p.r.push_back(*value);
      if (idx == 0) trace.organism_names.push_back(name);
    } else if (kind == "alpha_gene") {
      p.alpha_gene[name] = *value;
    } else if (kind == "alpha_organism") {
      p.alpha_organism[name] = *value;
    } else if (kind == "delta_bar") {
      const auto s = effect_strategy(name);
      if (!s) throw ValidationError(Issue{"trace: unknown strategy '" + name + "'", at, {}});
      p.delta_bar[*s] = *value;
    } else if (kind == "clamp") {
      p.clamps.emplace_back(name, *value);
    } else {
      throw ValidationError(Issue{"trace: unknown kind '" + kind + "'", at, {}});
    }
  }
  if (pending.empty()) throw ValidationError("trace: no records");

  for (std::size_t k = 0; k < pending.size(); ++k) {
    auto& p = pending[k];
    if (p.gamma.size() != trace.gene_names.size() || p.r.size() != trace.organism_names.size()) {
      throw ValidationError("trace: iteration " + std::to_string(k) + " has inconsistent vector lengths");
    }
    TraceRecord<double> rec;
    rec.k = k;
    rec.gamma = Eigen::Map<const VectorXd>(p.gamma.data(), static_cast<Index>(p.gamma.size()));
    rec.r = Eigen::Map<const VectorXd>(p.r.data(), static_cast<Index>(p.r.size()));
    rec.alpha_gene = {p.alpha_gene["dominant"], p.alpha_gene["altruistic"]};
    rec.alpha_organism = {p.alpha_organism["balanced"], p.alpha_organism["selfish"]};
    rec.delta_bar = std::move(p.delta_bar);
    for (const auto& [name, raw] : p.clamps) {
      const auto it = std::find(trace.gene_names.begin(), trace.gene_names.end(), name);
      if (it == trace.gene_names.end()) throw ValidationError("trace: clamp names unknown gene '" + name + "'");
      rec.clamps.push_back({static_cast<Index>(it - trace.gene_names.begin()), raw, std::clamp(raw, kClampLower, kClampUpper)});
    }
    trace.records.push_back(std::move(rec));
  }
  trace.status = infer_status(trace);
  return trace;
}

}  // namespace genesim::io
