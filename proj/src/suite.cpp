#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "amk/bench.hpp"

namespace amk {

std::string SuiteRow::label() const {
  return std::to_string(pigeons) + "-" + std::to_string(holes) + "-" + std::to_string(capacity);
}

namespace {

std::vector<SuiteColumn> same_encoding_columns(std::initializer_list<Encoding> encs) {
  std::vector<SuiteColumn> cols;
  for (Encoding e : encs) cols.push_back({std::string(encoding_name(e)), e, e});
  return cols;
}

// At-most-one rows use the product encoding for every pigeon.
std::vector<SuiteColumn> amk_columns(std::initializer_list<Encoding> encs) {
  std::vector<SuiteColumn> cols;
  for (Encoding e : encs) cols.push_back({std::string(encoding_name(e)), Encoding::pd, e});
  return cols;
}

std::string seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", s);
  return buf;
}

}  // namespace

std::vector<std::string> preset_suite_names() {
  return {"table1-small", "table1-large", "table2-small", "table2-large"};
}

std::optional<Suite> preset_suite(std::string_view name) {
  using enum Encoding;
  if (name == "table1-small")
    return Suite{std::string(name),
                 {{12, 11, 1}, {13, 12, 1}, {14, 13, 1}, {15, 14, 1}, {16, 15, 1}},
                 same_encoding_columns({bs, pc, pd, sc})};
  if (name == "table1-large")
    return Suite{std::string(name),
                 {{100, 100, 1}, {200, 200, 1}, {300, 300, 1}, {400, 400, 1}, {500, 500, 1}},
                 same_encoding_columns({bs, pc, pd, sc})};
  if (name == "table2-small")
    return Suite{std::string(name),
                 {{19, 9, 2}, {21, 5, 4}, {22, 7, 3}, {25, 6, 4}, {26, 5, 5}},
                 amk_columns({ba, pc, sc})};
  if (name == "table2-large")
    return Suite{std::string(name),
                 {{100, 20, 5}, {200, 40, 5}, {300, 60, 5}, {400, 80, 5}, {500, 100, 5}},
                 amk_columns({ba, pc, sc})};
  return std::nullopt;
}

Suite filter_rows(const Suite& suite, const std::vector<std::string>& labels) {
  Suite out{suite.name, {}, suite.columns};
  for (const SuiteRow& row : suite.rows)
    if (std::find(labels.begin(), labels.end(), row.label()) != labels.end())
      out.rows.push_back(row);
  return out;
}

std::string csv_row(const BenchResult& r) {
  std::ostringstream s;
  s << r.instance << ',' << encoding_name(r.amo) << ',' << encoding_name(r.amk) << ','
    << verdict_name(r.verdict) << ',' << seconds(r.encode_s) << ',' << seconds(r.solve_s) << ','
    << seconds(r.total_s()) << ',' << r.vars << ',' << r.clauses;
  return s.str();
}

std::vector<BenchResult> run_suite(const Suite& suite, const SolverConfig& cfg,
                                   std::ostream& csv) {
  std::vector<PigeonholeInstance> cells;
  for (const SuiteRow& row : suite.rows)
    for (const SuiteColumn& col : suite.columns)
      cells.push_back({row.pigeons, row.holes, row.capacity, col.amo, col.amk});

  csv << kCsvHeader << '\n' << std::flush;
  std::vector<BenchResult> results(cells.size());
  std::vector<bool> done(cells.size(), false);
  std::size_t next_emit = 0;
  std::mutex mu;

  auto run_one = [&](std::size_t i) {
    BenchResult r;
    try {
      r = run_cell(cells[i], cfg);
    } catch (const std::exception& e) {
      r.instance = cells[i].label();
      r.amo = cells[i].amo;
      r.amk = cells[i].amk;
      r.verdict = Verdict::error;
      r.message = e.what();
    }
    std::lock_guard lock(mu);
    results[i] = std::move(r);
    done[i] = true;
    while (next_emit < cells.size() && done[next_emit])
      csv << csv_row(results[next_emit++]) << '\n' << std::flush;
  };

  const std::size_t workers = std::min(cfg.parallelism, cells.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) run_one(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) run_one(i);
    });
  for (std::thread& t : pool) t.join();
  return results;
}

std::string render_markdown(const Suite& suite, const std::vector<BenchResult>& results,
                            double timeout_s) {
  std::ostringstream s;
  s << "| P-H-K |";
  for (const SuiteColumn& c : suite.columns) {
    std::string label = c.label;
    std::transform(label.begin(), label.end(), label.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
    s << ' ' << label << " |";
  }
  s << "\n|---|";
  for (std::size_t i = 0; i < suite.columns.size(); ++i) s << "---:|";
  s << '\n';

  char limit[32];
  std::snprintf(limit, sizeof limit, ">%g", timeout_s);
  std::size_t idx = 0;
  for (const SuiteRow& row : suite.rows) {
    s << "| " << row.label() << " |";
    for (std::size_t c = 0; c < suite.columns.size(); ++c, ++idx) {
      if (idx >= results.size()) {
        s << "  |";
        continue;
      }
      const BenchResult& r = results[idx];
      if (r.verdict == Verdict::timeout) s << ' ' << limit << " |";
      else if (r.verdict == Verdict::error) s << " ERR |";
      else s << ' ' << seconds(r.total_s()) << " |";
    }
    s << '\n';
  }
  return s.str();
}

}  // namespace amk
