// Copyright 2026 The evreq authors
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

#include "evreq/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace evreq {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

const std::set<std::string> kKnownKeys = {"rho",    "mu0",  "pi",   "c",      "k",
                                          "grid_c", "grid_k", "out_dir", "jobs", "seed",
                                          "points"};

}  // namespace

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig config;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (!kKnownKeys.count(key))
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": unknown key '" +
                                  key + "'");
    if (config.values.count(key))
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": duplicate key '" +
                                  key + "'");
    config.values[key] = value;
  }
  return config;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

std::string RunConfig::get(const std::string& key) const {
  const auto it = values.find(key);
  if (it == values.end()) throw std::invalid_argument("missing config key '" + key + "'");
  return it->second;
}

Rat RunConfig::rat(const std::string& key) const { return Rat::parse(get(key)); }

std::vector<Rat> RunConfig::rat_list(const std::string& key) const {
  return parse_rat_list(get(key));
}

std::vector<Rat> parse_rat_list(const std::string& text) {
  std::vector<Rat> result;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    const std::string stripped = trim(token);
    if (stripped.empty()) throw std::invalid_argument("empty entry in rational list");
    result.push_back(Rat::parse(stripped));
  }
  if (result.empty()) throw std::invalid_argument("empty rational list");
  return result;
}

nlohmann::json to_json(const Mechanism& m) {
  nlohmann::json sigma2;
  for (Report r : kAllReports) sigma2[to_string(r)] = m.sigma2_at(r) ? 1 : 0;
  nlohmann::json xhat = nlohmann::json::array();
  for (int i = 0; i < 3; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < 3; ++j) row.push_back(m.xhat[i][j] ? 1 : 0);
    xhat.push_back(row);
  }
  return {{"index", encode(m)},
          {"sigma1", m.sigma1 ? 1 : 0},
          {"sigma2", sigma2},
          {"xhat", xhat},
          {"forcing", m.is_forcing()}};
}

nlohmann::json to_json(const TestingPolicy& p) {
  nlohmann::json sigma2;
  for (Report r : kAllReports) sigma2[to_string(r)] = p.sigma2_at(r) ? 1 : 0;
  return {{"sigma1", p.sigma1 ? 1 : 0}, {"sigma2", sigma2}};
}

nlohmann::json to_json(const AgentStrategy& s) {
  // Field order: e1; d1(saw0), d1(saw1); e2 by canonical state; d2 by state
  // then omega2. Reveal and test map to 1.
  nlohmann::json e2 = nlohmann::json::array();
  nlohmann::json d2 = nlohmann::json::array();
  std::string bits;
  bits += s.e1 ? '1' : '0';
  for (int w = 0; w < 2; ++w) bits += s.d1[w] == Disclosure::kReveal ? '1' : '0';
  for (int i = 0; i < 5; ++i) {
    e2.push_back(s.e2[i] ? 1 : 0);
    bits += s.e2[i] ? '1' : '0';
  }
  for (int i = 0; i < 5; ++i) {
    nlohmann::json cell = nlohmann::json::array();
    for (int w = 0; w < 2; ++w) {
      cell.push_back(s.d2[i][w] == Disclosure::kReveal ? 1 : 0);
      bits += s.d2[i][w] == Disclosure::kReveal ? '1' : '0';
    }
    d2.push_back(cell);
  }
  nlohmann::json states = nlohmann::json::array();
  for (const auto& st : kPrivateStates)
    states.push_back(std::string(to_string(st.o1)) + "," + to_string(st.r1));
  return {{"e1", s.e1 ? 1 : 0},
          {"d1", {s.d1[0] == Disclosure::kReveal ? 1 : 0, s.d1[1] == Disclosure::kReveal ? 1 : 0}},
          {"e2", e2},
          {"d2", d2},
          {"state_order", states},
          {"bits", bits}};
}

nlohmann::json to_json(const Params& p) {
  return {{"rho", p.rho.str()},
          {"mu0", p.mu0.str()},
          {"pi", p.pi.str()},
          {"c", p.c.str()},
          {"k", p.k.str()}};
}

nlohmann::json to_json(const Thresholds& t) {
  nlohmann::json j{{"gamma", t.gamma.str()},
                   {"kappa", t.kappa.str()},
                   {"mu2_null", t.mu2_null.str()},
                   {"gamma_bar_prime", t.gamma_bar_prime.str()},
                   {"kappa_bar", t.kappa_bar.str()},
                   {"one_minus_rho", t.one_minus_rho.str()}};
  if (t.gamma_bar) j["gamma_bar"] = t.gamma_bar->str();
  return j;
}

nlohmann::json to_json(const OptimumResult& r) {
  return {{"mode", to_string(r.mode)},
          {"best_w", r.best_w.str()},
          {"argmax", r.argmax},
          {"argmax_size", r.argmax.size()},
          {"canonical", r.canonical}};
}

nlohmann::json to_json(const ClosedFormResult& r) {
  nlohmann::json j{{"region", to_string(r.region)}};
  if (r.mechanism) j["mechanism"] = to_json(*r.mechanism);
  if (r.predicted_w) j["predicted_w"] = r.predicted_w->str();
  if (r.tie_mechanism) j["tie_mechanism"] = to_json(*r.tie_mechanism);
  return j;
}

nlohmann::json to_json(const ConstraintReport& r) {
  nlohmann::json constraints = nlohmann::json::array();
  for (const auto& c : r.constraints) {
    constraints.push_back(
        {{"name", c.name}, {"satisfied", c.satisfied}, {"slack", c.slack.str()}});
  }
  return {{"constraints", constraints}, {"all_satisfied", r.all_satisfied()}};
}

nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json claims = nlohmann::json::array();
  for (const auto& c : r.claims) {
    claims.push_back({{"id", c.id},
                      {"applicable", c.applicable},
                      {"passed", c.passed},
                      {"informational", c.informational},
                      {"detail", c.detail}});
  }
  return {{"params", to_json(r.params)}, {"claims", claims}, {"all_passed", r.all_passed()}};
}

std::string region_csv(const std::vector<RegionReport>& reports) {
  std::ostringstream out;
  out << "rho,mu0,pi,c,k,gamma,kappa,label,closed_form_W,brute_force_W,match,"
         "canonical_mechanism_index\n";
  for (const auto& r : reports) {
    out << r.params.rho.str() << ',' << r.params.mu0.str() << ',' << r.params.pi.str() << ','
        << r.params.c.str() << ',' << r.params.k.str() << ',' << r.gamma.str() << ','
        << r.kappa.str() << ',' << to_string(r.label) << ','
        << (r.closed_form_w ? r.closed_form_w->str() : "n/a") << ',' << r.brute_force_w.str()
        << ','
        << (r.closed_form_in_argmax ? (*r.closed_form_in_argmax ? "true" : "false") : "n/a")
        << ',' << r.canonical_index << '\n';
  }
  return out.str();
}

namespace {

const char* region_color(RegionLabel label) {
  switch (label) {
    case RegionLabel::kLowCosts: return "#4c78a8";
    case RegionLabel::kIntermediateAssignBias: return "#f58518";
    case RegionLabel::kIntermediateResultDependent: return "#54a24b";
    case RegionLabel::kIntermediateBoundary: return "#eeca3b";
    case RegionLabel::kHighCosts: return "#b279a2";
    case RegionLabel::kNoFreeSignal: return "#72b7b2";
    case RegionLabel::kUncovered: return "#d3d3d3";
  }
  return "#000000";
}

constexpr RegionLabel kAllLabels[] = {
    RegionLabel::kLowCosts,           RegionLabel::kIntermediateAssignBias,
    RegionLabel::kIntermediateResultDependent, RegionLabel::kIntermediateBoundary,
    RegionLabel::kHighCosts,          RegionLabel::kNoFreeSignal,
    RegionLabel::kUncovered};

}  // namespace

std::string region_svg(const std::vector<RegionReport>& reports, int n_cols, int n_rows) {
  if (n_cols <= 0 || n_rows <= 0 ||
      static_cast<std::size_t>(n_cols) * static_cast<std::size_t>(n_rows) != reports.size())
    throw std::invalid_argument("svg grid shape does not match report count");
  constexpr int cell = 24;
  constexpr int margin = 8;
  constexpr int legend_row = 18;
  const int width = n_cols * cell + 2 * margin;
  const int height = n_rows * cell + 2 * margin + legend_row * 7 + 8;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "<!-- columns: c ascending left to right; rows: k ascending top to bottom -->\n";
  for (int row = 0; row < n_rows; ++row) {
    for (int col = 0; col < n_cols; ++col) {
      const RegionReport& r = reports[row * n_cols + col];
      const int x = margin + col * cell;
      const int y = margin + row * cell;
      const bool mismatch = r.closed_form_in_argmax && !*r.closed_form_in_argmax;
      out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\"" << cell
          << "\" fill=\"" << region_color(r.label) << "\"";
      if (mismatch) {
        out << " stroke=\"#d62728\" stroke-width=\"3\"";
      } else {
        out << " stroke=\"#ffffff\" stroke-width=\"1\"";
      }
      out << "><title>c=" << r.params.c.str() << " k=" << r.params.k.str() << " "
          << to_string(r.label) << "</title></rect>\n";
    }
  }
  int ly = margin + n_rows * cell + legend_row;
  for (RegionLabel label : kAllLabels) {
    out << "<rect x=\"" << margin << "\" y=\"" << ly - 12 << "\" width=\"12\" height=\"12\" fill=\""
        << region_color(label) << "\"/>\n";
    out << "<text x=\"" << margin + 18 << "\" y=\"" << ly - 2
        << "\" font-family=\"monospace\" font-size=\"11\">" << to_string(label) << "</text>\n";
    ly += legend_row;
  }
  out << "</svg>\n";
  return out.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << contents;
}

}  // namespace evreq
