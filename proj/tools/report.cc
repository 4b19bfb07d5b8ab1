// Copyright 2026 The hqrsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "report.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <exception>
#include <thread>

#include "hqr/analytics.h"

namespace hqr::cli {

ProtocolResult run(const RunConfig& config, double alpha) {
  const ProtocolParams p = config.params(alpha);
  const DetectorModel d = config.detector_model();
  switch (config.protocol) {
    case ProtocolKind::kNew:
      return run_new_protocol(p, d, d);
    case ProtocolKind::kII:
      return run_protocol_II(p, d);
    case ProtocolKind::kI:
      return run_protocol_I(p, config.window, config.window_bins);
  }
  throw ConfigError("unknown protocol");
}

Row evaluate(const RunConfig& config, double alpha) {
  const ProtocolParams p = config.params(alpha);
  const ProtocolResult r = run(config, alpha);
  Row row;
  row.alpha = alpha;
  row.transmittance = p.transmittance();
  row.ps = r.success_probability;
  row.fidelity = r.fidelity;
  row.weights = r.bell_weights;

  const DetectorKind d = config.effective_detector();
  const bool ideal_td = d == DetectorKind::kThreshold && config.eta == 1.0 && config.nu == 0.0;
  if (config.protocol == ProtocolKind::kNew) {
    if (d == DetectorKind::kPnr) {
      row.ps_closed = analytics::ps_closed(p);
      row.f_closed = analytics::f_closed(p);
    } else if (ideal_td) {
      row.ps_closed = analytics::ps_closed(p);
      row.f_closed = analytics::f_td_ideal(p);
    }
  } else if (config.protocol == ProtocolKind::kII && d == DetectorKind::kPnr) {
    row.ps_closed = analytics::ps_protocol_ii_pnr(p);
    row.f_closed = analytics::f_protocol_ii_pnr(p);
  }
  return row;
}

std::vector<Row> evaluate_all(const RunConfig& config, const std::vector<double>& alphas) {
  std::vector<Row> rows(alphas.size());
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(alphas.size(), 1));
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < alphas.size(); i += workers) rows[i] = evaluate(config, alphas[i]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  std::array<char, 64> buf;
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), end);
}

void write_config_echo(std::ostream& out, std::string_view command, const RunConfig& config,
                       const std::vector<std::pair<std::string, std::string>>& extra) {
  out << "# hqr " << kToolVersion << '\n';
  out << "# command=" << command << '\n';
  if (command == "preset") {
    // Each curve fixes its own protocol and detector; see the curve lines.
    out << "# protocol=per curve\n# detector=per curve\n";
  } else {
    out << "# protocol=" << to_string(config.protocol) << '\n';
    out << "# detector=" << to_string(config.effective_detector()) << '\n';
    out << "# eta=" << format_number(config.eta) << '\n';
    out << "# nu=" << format_number(config.nu) << '\n';
  }
  out << "# window=" << format_number(config.window) << '\n';
  out << "# window_bins=" << config.window_bins << '\n';
  out << "# alpha_min=" << format_number(config.alpha_min) << '\n';
  out << "# alpha_max=" << format_number(config.alpha_max) << '\n';
  out << "# alpha_count=" << config.alpha_count << '\n';
  out << "# alpha_scale=" << to_string(config.alpha_scale) << '\n';
  out << "# theta=" << format_number(config.theta) << '\n';
  out << "# l=" << format_number(config.l);
  if (!config.l_explicit) out << " (assumed default, not set by the user)";
  out << '\n';
  out << "# l0=" << format_number(config.l0) << '\n';
  for (const auto& [key, value] : extra) out << "# " << key << '=' << value << '\n';
}

std::string format_row(const Row& row) {
  std::string line;
  auto field = [&line](const std::string& text) {
    if (!line.empty()) line += ',';
    line += text;
  };
  field(format_number(row.alpha));
  field(format_number(row.transmittance));
  field(format_number(row.ps));
  field(format_number(row.fidelity));
  field(format_number(row.weights.phi_plus));
  field(format_number(row.weights.phi_minus));
  field(format_number(row.weights.psi_plus));
  field(format_number(row.weights.psi_minus));
  field(row.ps_closed ? format_number(*row.ps_closed) : "");
  field(row.f_closed ? format_number(*row.f_closed) : "");
  return line;
}

}  // namespace hqr::cli
