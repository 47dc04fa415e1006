// Copyright 2026 The ueks Authors.
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

// ueks: command-line front end.
//
//   ueks test --data x.txt --test desu [--side plus] [--reps 10000] [--seed 1]
//   ueks critvals --test bh --n 100 --reps 10000 --seed 1 --alpha 0.05
//   ueks ldrate --test desu --a 0.25 --n-grid 40,80,160 --reps 200000
//   ueks varfun --test polya --lo -3 --hi 3 --points 601
//   ueks efficiency --test desu --alt weibull
//   ueks f0 --a 0.01 --a 0.5
//
// Machine formats (json, csv) print numbers with 10 significant digits.
// Exit codes: 0 ok, 2 bad input, 3 data assumption violated, 4 numerics.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ueks/distributions.hpp"
#include "ueks/efficiency.hpp"
#include "ueks/errors.hpp"
#include "ueks/kernels.hpp"
#include "ueks/large_deviation.hpp"
#include "ueks/montecarlo.hpp"
#include "ueks/sample.hpp"
#include "ueks/statistics.hpp"

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

enum class out_format { json, csv, pretty };

std::string fmt10(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Rounds to 10 significant digits so that json output is short and stable.
json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::strtod(fmt10(v).c_str(), nullptr);
}

using cell = std::variant<std::string, double, long long>;

std::string cell_text(const cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* d = std::get_if<double>(&c)) return fmt10(*d);
  return std::to_string(std::get<long long>(c));
}

json cell_json(const cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* d = std::get_if<double>(&c)) return num(*d);
  return std::get<long long>(c);
}

struct table {
  std::vector<std::string> columns;
  std::vector<std::vector<cell>> rows;
};

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void print_csv(const table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_quote(cell_text(row[i]));
    os << "\n";
  }
}

void print_pretty(const table& t, std::ostream& os) {
  std::vector<std::size_t> width(t.columns.size());
  for (std::size_t i = 0; i < t.columns.size(); ++i) width[i] = t.columns[i].size();
  for (const auto& row : t.rows)
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], cell_text(row[i]).size());
  auto line = [&](auto get) {
    for (std::size_t i = 0; i < width.size(); ++i) {
      const std::string s = get(i);
      os << (i ? "  " : "") << s << std::string(width[i] - s.size(), ' ');
    }
    os << "\n";
  };
  line([&](std::size_t i) { return t.columns[i]; });
  line([&](std::size_t i) { return std::string(width[i], '-'); });
  for (const auto& row : t.rows) line([&](std::size_t i) { return cell_text(row[i]); });
}

json table_json(const table& t) {
  json arr = json::array();
  for (const auto& row : t.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = cell_json(row[i]);
    arr.push_back(std::move(obj));
  }
  return arr;
}

void emit_table(const table& t, out_format f, std::ostream& os) {
  switch (f) {
    case out_format::json:
      os << table_json(t).dump(2) << "\n";
      break;
    case out_format::csv:
      print_csv(t, os);
      break;
    case out_format::pretty:
      print_pretty(t, os);
      break;
  }
}

// Flat key/value records: nested objects become dotted column names.
void flatten(const json& j, const std::string& prefix, table& t) {
  for (const auto& [k, v] : j.items()) {
    const std::string key = prefix.empty() ? k : prefix + "." + k;
    if (v.is_object()) {
      flatten(v, key, t);
      continue;
    }
    t.columns.push_back(key);
    if (v.is_number_integer()) {
      t.rows[0].emplace_back(static_cast<long long>(v.get<long long>()));
    } else if (v.is_number()) {
      t.rows[0].emplace_back(v.get<double>());
    } else if (v.is_null()) {
      t.rows[0].emplace_back(std::string("nan"));
    } else if (v.is_string()) {
      t.rows[0].emplace_back(v.get<std::string>());
    } else {
      t.rows[0].emplace_back(v.dump());
    }
  }
}

void emit_record(const json& j, out_format f, std::ostream& os) {
  if (f == out_format::json) {
    os << j.dump(2) << "\n";
    return;
  }
  table t;
  t.rows.emplace_back();
  flatten(j, "", t);
  if (f == out_format::csv) {
    print_csv(t, os);
    return;
  }
  std::size_t w = 0;
  for (const auto& c : t.columns) w = std::max(w, c.size());
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    os << t.columns[i] << std::string(w - t.columns[i].size() + 2, ' ')
       << cell_text(t.rows[0][i]) << "\n";
  }
}

// --- data input -------------------------------------------------------------

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_number(std::string_view text, std::size_t line_no) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ueks::parse_error("line " + std::to_string(line_no) + ": cannot parse '" +
                            std::string(text) + "' as a number");
  }
  if (!std::isfinite(v)) {
    throw ueks::parse_error("line " + std::to_string(line_no) + ": non-finite value");
  }
  return v;
}

// Plain text (one number per line) or, with a column selector, CSV. The
// column is a zero-based index or a header name; with an index, a first row
// that does not parse is taken as a header.
std::vector<double> read_data(const std::string& path, const std::string& column) {
  std::ifstream in(path);
  if (!in) throw ueks::parse_error("cannot open data file '" + path + "'");
  std::vector<double> out;
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> col;
  bool header_done = column.empty();
  bool maybe_header = false;
  if (!column.empty()) {
    std::size_t idx = 0;
    const auto [ptr, ec] = std::from_chars(column.data(), column.data() + column.size(), idx);
    if (ec == std::errc() && ptr == column.data() + column.size()) {
      col = idx;
      header_done = true;
      maybe_header = true;
    }
  }
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    if (column.empty()) {
      out.push_back(parse_number(s, line_no));
      continue;
    }
    const auto fields = split_csv_line(s);
    if (!header_done) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        std::string_view f = fields[i];
        if (f.size() >= 2 && f.front() == '"' && f.back() == '"') f = f.substr(1, f.size() - 2);
        if (f == column) col = i;
      }
      if (!col) {
        throw ueks::parse_error("line " + std::to_string(line_no) + ": no column named '" +
                                column + "'");
      }
      header_done = true;
      continue;
    }
    if (*col >= fields.size()) {
      throw ueks::parse_error("line " + std::to_string(line_no) + ": missing column " +
                              std::to_string(*col));
    }
    if (maybe_header) {
      maybe_header = false;
      double v = 0.0;
      std::string_view f = trim(fields[*col]);
      if (!f.empty() && f.front() == '+') f.remove_prefix(1);
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size() || f.empty()) continue;
    }
    out.push_back(parse_number(fields[*col], line_no));
  }
  if (out.empty()) throw ueks::parse_error("data file '" + path + "' holds no values");
  return out;
}

// --- calibration with optional cache -----------------------------------------

std::string cache_key(const std::string& test, std::size_t n, std::size_t reps,
                      std::uint64_t seed, const ueks::simulation_options& opt) {
  std::ostringstream k;
  k << test << "_n" << n << "_r" << reps << "_s" << seed << "_" << ueks::to_string(opt.which);
  if (opt.null) {
    std::string d = opt.null->descriptor();
    std::replace_if(d.begin(), d.end(), [](char c) { return c == ':' || c == '/'; }, '-');
    k << "_" << d;
  }
  if (opt.center) k << "_centered";
  return k.str() + ".bin";
}

ueks::null_simulation calibrate(const std::string& test, std::size_t n, std::size_t reps,
                                std::uint64_t seed, const ueks::simulation_options& opt,
                                const std::string& cache_dir) {
  fs::path file;
  if (!cache_dir.empty()) {
    file = fs::path(cache_dir) / cache_key(test, n, reps, seed, opt);
    std::ifstream in(file, std::ios::binary);
    if (in) {
      std::vector<double> values(reps);
      in.read(reinterpret_cast<char*>(values.data()),
              static_cast<std::streamsize>(reps * sizeof(double)));
      if (in.gcount() == static_cast<std::streamsize>(reps * sizeof(double)) &&
          in.peek() == std::char_traits<char>::eof()) {
        ueks::null_simulation sim;
        sim.test_id = test;
        sim.n = n;
        sim.reps = reps;
        sim.seed = seed;
        sim.which = opt.which;
        sim.null = opt.null.value_or(ueks::builtin_family(test).null());
        sim.values = std::move(values);
        return sim;
      }
    }
  }
  ueks::null_simulation sim = ueks::simulate_null(test, n, reps, seed, opt);
  if (!file.empty()) {
    fs::create_directories(file.parent_path());
    const fs::path tmp = file.string() + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary);
      out.write(reinterpret_cast<const char*>(sim.values.data()),
                static_cast<std::streamsize>(sim.values.size() * sizeof(double)));
    }
    fs::rename(tmp, file);
  }
  return sim;
}

std::string alpha_key(double a) { return fmt10(a); }

// --- subcommands ------------------------------------------------------------

struct common_opts {
  std::string format = "json";
  unsigned threads = 0;
};

out_format parse_format(const std::string& s) {
  if (s == "json") return out_format::json;
  if (s == "csv") return out_format::csv;
  if (s == "pretty") return out_format::pretty;
  throw ueks::parse_error("unknown format '" + s + "'");
}

struct test_opts {
  std::string data, column, test, side = "two-sided", null_desc, cache_dir;
  std::size_t reps = 10000;
  std::uint64_t seed = 1;
  bool jitter = false, center = false;
};

int run_test(const test_opts& o, const common_opts& c) {
  std::vector<double> values = read_data(o.data, o.column);
  std::size_t moved = 0;
  if (o.jitter) moved = ueks::break_ties(values);
  const ueks::sample s(std::move(values));
  const ueks::side which = ueks::parse_side(o.side);

  ueks::statistic_options so;
  ueks::simulation_options sim_opt;
  if (!o.null_desc.empty()) {
    const auto d = ueks::distribution::parse(o.null_desc);
    so.reference = d;
    sim_opt.null = d;
  }
  so.center = o.center;
  sim_opt.center = o.center;
  sim_opt.which = which;
  sim_opt.threads = c.threads;

  const ueks::stat_result r = ueks::compute_statistic(o.test, s, which, so);
  const ueks::null_simulation sim = calibrate(o.test, s.size(), o.reps, o.seed, sim_opt, o.cache_dir);

  json j;
  j["test"] = o.test;
  j["side"] = std::string(ueks::to_string(which));
  j["n"] = s.size();
  j["statistic"] = num(r.value);
  j["argmax_t"] = num(r.argmax_t);
  j["p_value"] = num(ueks::p_value(sim, r.value));
  json crit = json::object();
  for (double a : {0.10, 0.05, 0.01}) {
    try {
      crit[alpha_key(a)] = num(ueks::critical_value(sim, a));
    } catch (const ueks::precision_error&) {
      crit[alpha_key(a)] = nullptr;
    }
  }
  j["critical_values"] = crit;
  j["reps"] = o.reps;
  j["seed"] = o.seed;
  if (o.jitter) j["jittered"] = moved;
  emit_record(j, parse_format(c.format), std::cout);
  return 0;
}

struct critvals_opts {
  std::string test, side = "two-sided", null_desc, cache_dir;
  std::size_t n = 0, reps = 10000;
  std::uint64_t seed = 1;
  std::vector<double> alphas;
  bool center = false;
};

int run_critvals(const critvals_opts& o, const common_opts& c) {
  ueks::simulation_options opt;
  opt.which = ueks::parse_side(o.side);
  opt.threads = c.threads;
  opt.center = o.center;
  if (!o.null_desc.empty()) opt.null = ueks::distribution::parse(o.null_desc);
  const ueks::null_simulation sim = calibrate(o.test, o.n, o.reps, o.seed, opt, o.cache_dir);
  std::vector<double> alphas = o.alphas;
  if (alphas.empty()) alphas = {0.10, 0.05, 0.01};
  json crit = json::object();
  for (double a : alphas) crit[alpha_key(a)] = num(ueks::critical_value(sim, a));
  json j;
  j["test"] = o.test;
  j["side"] = std::string(ueks::to_string(opt.which));
  j["n"] = o.n;
  j["reps"] = o.reps;
  j["seed"] = o.seed;
  j["criticals"] = crit;
  emit_record(j, parse_format(c.format), std::cout);
  return 0;
}

struct ldrate_opts {
  std::string test, n_grid = "40,80,160", side = "two-sided";
  double a = 0.25;
  std::size_t reps = 200000;
  std::uint64_t seed = 1;
};

std::vector<std::size_t> parse_grid(const std::string& text) {
  std::vector<std::size_t> out;
  for (auto field : split_csv_line(text)) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size() || v == 0) {
      throw ueks::parse_error("bad n-grid entry '" + std::string(field) + "'");
    }
    out.push_back(v);
  }
  return out;
}

int run_ldrate(const ldrate_opts& o, const common_opts& c) {
  ueks::simulation_options opt;
  opt.threads = c.threads;
  opt.which = ueks::parse_side(o.side);
  const ueks::rate_estimate est =
      ueks::empirical_ld_rate(o.test, o.a, parse_grid(o.n_grid), o.reps, o.seed, opt);
  table t{{"n", "exceedances", "p_hat", "rate_hat", "rate_theory"}, {}};
  for (const auto& p : est.points) {
    t.rows.push_back({static_cast<long long>(p.n), static_cast<long long>(p.exceedances),
                      p.p_hat, p.rate_hat, est.rate_theory});
  }
  emit_table(t, parse_format(c.format), std::cout);
  return 0;
}

struct varfun_opts {
  std::string test;
  std::optional<double> lo, hi;
  std::size_t points = 601;
};

int run_varfun(const varfun_opts& o, const common_opts& c) {
  const ueks::kernel_family& fam = ueks::builtin_family(o.test);
  const ueks::parameter_interval g = fam.grid_interval();
  const double lo = o.lo.value_or(g.lo), hi = o.hi.value_or(g.hi);
  if (!(lo < hi) || o.points < 2) throw ueks::parameter_error("varfun: need lo < hi and points >= 2");
  table t{{"t", "sigma_sq"}, {}};
  double grid_best = -1.0, grid_arg = lo;
  for (std::size_t i = 0; i < o.points; ++i) {
    const double x = i + 1 == o.points ? hi : lo + (hi - lo) * static_cast<double>(i) /
                                                       static_cast<double>(o.points - 1);
    const double v = ueks::variance_at(fam, x);
    if (v > grid_best) {
      grid_best = v;
      grid_arg = x;
    }
    t.rows.push_back({x, v});
  }
  const ueks::rate_function rf = ueks::ld_leading_coeff(fam);
  const out_format f = parse_format(c.format);
  if (f == out_format::json) {
    json j;
    j["test"] = o.test;
    j["summary"] = {{"t_star", num(rf.argmax_t)},
                    {"phi0_sq", num(rf.phi0_sq)},
                    {"leading_coeff", num(rf.leading_coeff)},
                    {"grid_argmax", num(grid_arg)},
                    {"grid_max", num(grid_best)}};
    j["grid"] = table_json(t);
    std::cout << j.dump(2) << "\n";
  } else {
    emit_table(t, f, std::cout);
    if (f == out_format::pretty) {
      std::cout << "\nt_star " << fmt10(rf.argmax_t) << "  phi0_sq " << fmt10(rf.phi0_sq)
                << "  leading_coeff " << fmt10(rf.leading_coeff) << "\n";
    }
  }
  return 0;
}

struct efficiency_opts {
  std::vector<std::string> tests, alts;
};

int run_efficiency(const efficiency_opts& o, const common_opts& c) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& t : o.tests)
    for (const auto& a : o.alts) pairs.emplace_back(t, a);
  for (const auto& [t, a] : pairs) {
    ueks::builtin_family(t);
    ueks::alternative_family::builtin(a);
  }
  std::vector<std::future<ueks::efficiency_report>> jobs;
  const auto policy = ueks::resolve_threads(c.threads) > 1 ? std::launch::async : std::launch::deferred;
  for (const auto& [t, a] : pairs) {
    jobs.push_back(std::async(policy, [t, a] {
      return ueks::local_efficiency(t, ueks::alternative_family::builtin(a));
    }));
  }
  table tab{{"test", "alternative", "slope_coeff", "kl_coeff", "efficiency", "flags"}, {}};
  for (auto& job : jobs) {
    const ueks::efficiency_report r = job.get();
    std::string flags;
    for (const auto& f : r.flags) flags += (flags.empty() ? "" : ";") + f;
    tab.rows.push_back({r.test_id, r.alt_id, r.slope_coeff, r.kl_coeff, r.efficiency, flags});
  }
  emit_table(tab, parse_format(c.format), std::cout);
  return 0;
}

struct f0_opts {
  std::vector<double> a;
  std::size_t grid = 0;
};

int run_f0(const f0_opts& o, const common_opts& c) {
  std::vector<double> as = o.a;
  for (std::size_t k = 1; k <= o.grid; ++k) {
    as.push_back(static_cast<double>(k) / static_cast<double>(o.grid + 1));
  }
  if (as.empty()) throw ueks::parameter_error("f0: give --a or --grid");
  table t{{"a", "f0", "ratio_to_2a2"}, {}};
  for (double a : as) {
    const double f0 = ueks::kolmogorov_f0(a);
    t.rows.push_back({a, f0, f0 / (2 * a * a)});
  }
  emit_table(t, parse_format(c.format), std::cout);
  return 0;
}

int exit_code(const ueks::error& e) {
  switch (e.category()) {
    case ueks::error_category::input:
      return 2;
    case ueks::error_category::assumption:
      return 3;
    case ueks::error_category::numeric:
      return 4;
  }
  return 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tests built on U-empirical Kolmogorov-Smirnov statistics"};
  app.require_subcommand(1);
  common_opts common;
  app.add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "pretty"}))
      ->capture_default_str();
  app.add_option("--threads", common.threads, "Worker threads (default: UEKS_THREADS or all cores)");
  app.fallthrough();

  test_opts t;
  auto* test = app.add_subcommand("test", "Run a test on a data file");
  test->add_option("--data", t.data, "Data file: one number per line, or CSV with --column")->required();
  test->add_option("--column", t.column, "CSV column (index or header name)");
  test->add_option("--test", t.test, "Test id")->required();
  test->add_option("--side", t.side, "plus, minus or two-sided")->capture_default_str();
  test->add_option("--reps", t.reps, "Calibration replications")->capture_default_str();
  test->add_option("--seed", t.seed, "Calibration seed")->capture_default_str();
  test->add_option("--null", t.null_desc, "Null df descriptor, e.g. exp:1 or norm:0:2");
  test->add_option("--cache-dir", t.cache_dir, "Directory memoizing null simulations");
  test->add_flag("--jitter", t.jitter, "Break ties deterministically (1e-12 of the range)");
  test->add_flag("--center", t.center, "Subtract the sample mean (polya; changes the null)");

  critvals_opts cv;
  auto* critvals = app.add_subcommand("critvals", "Simulated critical values");
  critvals->add_option("--test", cv.test, "Test id")->required();
  critvals->add_option("--n", cv.n, "Sample size")->required();
  critvals->add_option("--reps", cv.reps, "Replications")->capture_default_str();
  critvals->add_option("--seed", cv.seed, "Seed")->capture_default_str();
  critvals->add_option("--alpha", cv.alphas, "Level (repeatable)");
  critvals->add_option("--side", cv.side, "plus, minus or two-sided")->capture_default_str();
  critvals->add_option("--null", cv.null_desc, "Sampling df descriptor");
  critvals->add_option("--cache-dir", cv.cache_dir, "Directory memoizing null simulations");
  critvals->add_flag("--center", cv.center, "Centre samples (polya)");

  ldrate_opts ld;
  auto* ldrate = app.add_subcommand("ldrate", "Empirical large-deviation rates");
  ldrate->add_option("--test", ld.test, "Test id")->required();
  ldrate->add_option("--a", ld.a, "Threshold")->capture_default_str();
  ldrate->add_option("--n-grid", ld.n_grid, "Comma-separated sample sizes")->capture_default_str();
  ldrate->add_option("--reps", ld.reps, "Replications per n")->capture_default_str();
  ldrate->add_option("--seed", ld.seed, "Seed")->capture_default_str();
  ldrate->add_option("--side", ld.side, "plus, minus or two-sided")->capture_default_str();

  varfun_opts vf;
  auto* varfun = app.add_subcommand("varfun", "Variance function on a grid");
  varfun->add_option("--test", vf.test, "Test id")->required();
  varfun->add_option("--lo", vf.lo, "Grid start (default: family interval)");
  varfun->add_option("--hi", vf.hi, "Grid end (default: family interval)");
  varfun->add_option("--points", vf.points, "Grid points")->capture_default_str();

  efficiency_opts ef;
  auto* efficiency = app.add_subcommand("efficiency", "Local Bahadur efficiencies");
  efficiency->add_option("--test", ef.tests, "Test id (repeatable)")->required();
  efficiency->add_option("--alt", ef.alts, "weibull, makeham, normshift, expscale (repeatable)")->required();

  f0_opts f0;
  auto* f0cmd = app.add_subcommand("f0", "Kolmogorov's rate f0(a)");
  f0cmd->add_option("--a", f0.a, "Threshold (repeatable)");
  f0cmd->add_option("--grid", f0.grid, "Also use a = k/(grid+1), k = 1..grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*test) return run_test(t, common);
    if (*critvals) return run_critvals(cv, common);
    if (*ldrate) return run_ldrate(ld, common);
    if (*varfun) return run_varfun(vf, common);
    if (*efficiency) return run_efficiency(ef, common);
    if (*f0cmd) return run_f0(f0, common);
  } catch (const ueks::error& e) {
    std::cerr << "ueks: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "ueks: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
