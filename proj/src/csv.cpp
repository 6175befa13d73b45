// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <charconv>
#include <ostream>
#include <sstream>

#include "pcrs/harness.hpp"

namespace pcrs {

namespace {

// Shortest representation that round-trips; NaN is written as an empty field.
std::string format_double(double v) {
  if (std::isnan(v)) return {};
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

bool same_double(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

double parse_double(std::string_view s, std::size_t line) {
  if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("parse_csv: bad number '" + std::string(s) + "' on line " + std::to_string(line));
  }
  return v;
}

std::uint64_t parse_count(std::string_view s, std::size_t line) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("parse_csv: bad integer '" + std::string(s) + "' on line " + std::to_string(line));
  }
  return v;
}

}  // namespace

bool ResultRow::operator==(const ResultRow& o) const {
  return scheme == o.scheme && M == o.M && same_double(kappa, o.kappa) && K == o.K &&
         same_double(sigma_shadow, o.sigma_shadow) && same_double(mean_sym_se, o.mean_sym_se) &&
         same_double(stderr_se, o.stderr_se) && n_realizations == o.n_realizations && mode == o.mode &&
         same_double(avg_mu, o.avg_mu);
}

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  os << kCsvHeader << '\n';
  for (const ResultRow& r : rows) {
    os << r.scheme << ',' << r.M << ',' << format_double(r.kappa) << ',' << r.K << ','
       << format_double(r.sigma_shadow) << ',' << format_double(r.mean_sym_se) << ',' << format_double(r.stderr_se)
       << ',' << r.n_realizations << ',' << r.mode << ',' << format_double(r.avg_mu) << '\n';
  }
}

std::string to_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  write_csv(os, rows);
  return os.str();
}

std::vector<ResultRow> parse_csv(std::string_view text) {
  std::vector<ResultRow> rows;
  std::size_t line_no = 0;
  bool header = false;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!header) {
      if (line != kCsvHeader) throw std::invalid_argument("parse_csv: unexpected header");
      header = true;
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      f.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (f.size() != 10) {
      throw std::invalid_argument("parse_csv: expected 10 fields on line " + std::to_string(line_no));
    }
    ResultRow r;
    r.scheme = std::string(f[0]);
    r.M = parse_count(f[1], line_no);
    r.kappa = parse_double(f[2], line_no);
    r.K = parse_count(f[3], line_no);
    r.sigma_shadow = parse_double(f[4], line_no);
    r.mean_sym_se = parse_double(f[5], line_no);
    r.stderr_se = parse_double(f[6], line_no);
    r.n_realizations = parse_count(f[7], line_no);
    r.mode = std::string(f[8]);
    r.avg_mu = parse_double(f[9], line_no);
    rows.push_back(std::move(r));
  }
  if (!header) throw std::invalid_argument("parse_csv: missing header");
  return rows;
}

}  // namespace pcrs
