#include "dirac/tables.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "dirac/induction.hpp"
#include "dirac/series.hpp"
#include "dirac/spin.hpp"

namespace dirac {

namespace {

const std::vector<std::string>& columns() {
  static const std::vector<std::string> c{"table", "x", "flags", "lambda", "nu", "infchar", "spin_lkts", "fold"};
  return c;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

long parse_label(const std::string& text) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(text, &used);
  } catch (const std::logic_error&) {
    throw DomainError("bad label '" + text + "'");
  }
  if (used != text.size() || v < 0) throw DomainError("bad label '" + text + "'");
  return v;
}

std::string join_lkts(const std::vector<IntVec>& lkts) {
  if (lkts.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < lkts.size(); ++i) {
    if (i) out += ';';
    out += format(lkts[i]);
  }
  return out;
}

QVec permuted(const QVec& v, const std::vector<int>& perm) {
  QVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[static_cast<std::size_t>(perm[i])];
  return out;
}

std::multiset<IntVec> as_multiset(const std::vector<IntVec>& v) { return {v.begin(), v.end()}; }

bool infchar_consistent_with(const RepRecord& r, const RealFormData& rf, const std::vector<WeylElement>& invs) {
  const RootSystem& rs = rf.system();
  const QVec target = dominant_rep(gfund(r.infchar), rs).weight.coords;
  const QVec minus_nu = -r.nu;
  for (const auto& w : invs) {
    if (w.apply(r.nu) != minus_nu) continue;
    const QVec x = Rational(1, 2) * (r.lambda + w.apply(r.lambda)) + r.nu;
    if (dominant_rep(gfund(x), rs).weight.coords == target) return true;
  }
  return false;
}

std::string list_failures(const std::vector<std::string>& bad) {
  std::string out;
  for (std::size_t i = 0; i < bad.size(); ++i) out += (i ? "; " : "") + bad[i];
  return out;
}

}  // namespace

std::string RepRecord::id() const { return table + "/" + (x ? std::to_string(*x) : std::string("-")); }

TableParseError::TableParseError(std::size_t line, std::string column, const std::string& what)
    : DomainError("line " + std::to_string(line) + (column.empty() ? "" : ", column " + column) + ": " + what),
      line_(line),
      column_(std::move(column)) {}

std::vector<RepRecord> parse_tables(std::istream& in) {
  std::vector<RepRecord> out;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split(line, '\t');
    if (!header) {
      for (std::size_t i = 0; i < fields.size(); ++i)
        if (i >= columns().size() || fields[i] != columns()[i])
          throw TableParseError(lineno, fields[i], "unknown column");
      if (fields.size() != columns().size()) throw TableParseError(lineno, "", "missing columns in header");
      header = true;
      continue;
    }
    if (fields.size() != columns().size())
      throw TableParseError(lineno, "", "expected " + std::to_string(columns().size()) + " fields, found " +
                                            std::to_string(fields.size()));
    RepRecord r;
    std::size_t col = 0;
    try {
      r.table = fields[0];
      if (r.table.empty() || r.table == "-") throw DomainError("missing table id");
      col = 1;
      if (fields[1] != "-") r.x = parse_label(fields[1]);
      col = 2;
      if (fields[2] != "-") {
        for (const auto& f : split(fields[2], ',')) {
          if (f == "star" && !r.star && !r.club)
            r.star = true;
          else if (f == "club" && !r.club)
            r.club = true;
          else
            throw DomainError("bad flag list '" + fields[2] + "'");
        }
      }
      col = 3;
      r.lambda = parse_qvec(fields[3]);
      col = 4;
      r.nu = parse_qvec(fields[4]);
      col = 5;
      r.infchar = parse_qvec(fields[5]);
      col = 6;
      if (fields[6] != "-")
        for (const auto& part : split(fields[6], ';')) r.spin_lkts.push_back(parse_intvec(part));
      col = 7;
      if (fields[7] != "-") {
        std::string f = fields[7];
        if (!f.empty() && f.back() == '*') {
          r.fold_star = true;
          f.pop_back();
        }
        r.fold_x = parse_label(f);
      }
      const std::size_t n = r.lambda.size();
      if (n == 0) throw DomainError("empty vector");
      for (col = 4; col <= 6; ++col) {
        const bool ok = col == 6 ? std::all_of(r.spin_lkts.begin(), r.spin_lkts.end(),
                                               [&](const IntVec& v) { return v.size() == n; })
                                 : (col == 4 ? r.nu : r.infchar).size() == n;
        if (!ok) throw DomainError("arity differs from lambda (" + std::to_string(n) + ")");
      }
    } catch (const TableParseError&) {
      throw;
    } catch (const DomainError& e) {
      throw TableParseError(lineno, columns()[col], e.what());
    }
    out.push_back(std::move(r));
  }
  return out;
}

void write_tables(std::ostream& out, const std::vector<RepRecord>& records) {
  for (std::size_t i = 0; i < columns().size(); ++i) out << (i ? "\t" : "") << columns()[i];
  out << '\n';
  for (const auto& r : records) {
    if (r.folded) continue;
    std::string flags = r.star && r.club ? "star,club" : r.star ? "star" : r.club ? "club" : "-";
    out << r.table << '\t' << (r.x ? std::to_string(*r.x) : "-") << '\t' << flags << '\t' << format(r.lambda) << '\t'
        << format(r.nu) << '\t' << format(r.infchar) << '\t' << join_lkts(r.spin_lkts) << '\t'
        << (r.fold_x ? std::to_string(*r.fold_x) + (r.fold_star ? "*" : "") : "-") << '\n';
  }
}

RepRecord fold_partner(const RepRecord& r, const RealFormData& rf) {
  const auto& perm = rf.preset().fold;
  if (perm.empty()) throw DomainError("no fold configured for this group");
  if (!r.fold_x) throw DomainError("record " + r.id() + " has no fold partner");
  if (r.lambda.size() != perm.size()) throw DomainError("record " + r.id() + " has the wrong rank");
  RepRecord p;
  p.table = r.table;
  p.x = r.fold_x;
  p.star = r.fold_star;
  p.club = false;
  p.lambda = permuted(r.lambda, perm);
  p.nu = permuted(r.nu, perm);
  p.infchar = permuted(r.infchar, perm);
  for (const auto& mu : r.spin_lkts) p.spin_lkts.push_back(to_int(contragredient(kfund(mu), rf).coords));
  p.fold_x = r.x;
  p.fold_star = r.star;
  p.folded = !r.folded;
  return p;
}

std::vector<RepRecord> expand_folds(const std::vector<RepRecord>& rows, const RealFormData& rf) {
  std::vector<RepRecord> out;
  for (const auto& r : rows) {
    out.push_back(r);
    if (r.fold_x && !r.folded) out.push_back(fold_partner(r, rf));
  }
  return out;
}

std::vector<RepRecord> ingest_tables(const std::string& path, const RealFormData& rf) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open table file " + path);
  return expand_folds(parse_tables(in), rf);
}

bool ValidationReport::ok() const { return failures() == 0; }

std::size_t ValidationReport::failures() const {
  return static_cast<std::size_t>(std::count_if(results.begin(), results.end(), [](const auto& c) { return !c.pass; }));
}

void ValidationReport::write_json(std::ostream& out) const {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& c : results)
    j.push_back({{"record_id", c.record_id}, {"check", c.check}, {"pass", c.pass}, {"detail", c.detail}});
  out << j.dump(2) << '\n';
}

void ValidationReport::write_tsv(std::ostream& out) const {
  out << "record_id\tcheck\tpass\tdetail\n";
  for (const auto& c : results)
    out << c.record_id << '\t' << c.check << '\t' << (c.pass ? "pass" : "FAIL") << '\t' << c.detail << '\n';
}

bool infchar_consistent(const RepRecord& r, const RealFormData& rf) {
  return infchar_consistent_with(r, rf, involutions(rf.system()));
}

ValidationReport validate(const std::vector<RepRecord>& records, const RealFormData& rf, unsigned threads) {
  const RootSystem& rs = rf.system();
  const auto invs = involutions(rs);
  std::map<std::pair<std::string, long>, const RepRecord*> by_label;
  for (const auto& r : records)
    if (r.x) by_label[{r.table, *r.x}] = &r;

  std::vector<std::vector<CheckResult>> per(records.size());
  auto check_one = [&](const RepRecord& r) {
    std::vector<CheckResult> out;
    const std::string id = r.id();
    auto add = [&](std::string check, bool pass, std::string detail) {
      out.push_back({id, std::move(check), pass, std::move(detail)});
    };
    const auto r_len = static_cast<std::size_t>(rs.rank());
    if (r.lambda.size() != r_len) {
      add("shape", false, "expected " + std::to_string(r_len) + " coordinates");
      return out;
    }
    const Rational target = rs.norm_sq(r.infchar);
    {
      std::vector<std::string> bad;
      for (const auto& mu : r.spin_lkts) {
        try {
          const auto sn = spin_norm_sq(kfund(mu), rf);
          if (dirac_test(sn.norm_sq, target) != DiracVerdict::Equality)
            bad.push_back(bracketed(mu) + " has spin norm " + format(sn.norm_sq));
        } catch (const DomainError& e) {
          bad.push_back(bracketed(mu) + ": " + e.what());
        }
      }
      if (r.spin_lkts.empty()) bad.push_back("no spin LKTs");
      add("spin_norm", bad.empty(), bad.empty() ? "all equal |Lambda|^2 = " + format(target) : list_failures(bad));
    }
    {
      std::vector<std::string> bad;
      for (const auto& mu : r.spin_lkts)
        if (!is_ktype(to_q(mu), rf)) bad.push_back(bracketed(mu));
      add("parity", bad.empty(), bad.empty() ? "" : "not K-types: " + list_failures(bad));
    }
    {
      std::vector<std::string> bad;
      for (const auto& mu : r.spin_lkts)
        if (!usmall_test(kfund(mu), rf)) bad.push_back(bracketed(mu));
      add("usmall", bad.empty(), bad.empty() ? "" : "not u-small: " + list_failures(bad));
    }
    {
      const bool integral = is_integral(r.infchar);
      const bool nonneg = std::all_of(r.infchar.begin(), r.infchar.end(), [](const Rational& q) { return q >= 0; });
      const bool pass = integral && nonneg && lemma_filter(to_int(integral ? r.infchar : QVec(r_len, Rational(0))), rf);
      add("lemma", pass, pass ? "" : bracketed(r.infchar) + " fails the candidate filter");
    }
    {
      const auto w = hp_check(gfund(r.infchar), rf);
      add("hp", w.has_value(),
          w ? "delta = " + bracketed(w->delta.coords) + ", j = " + std::to_string(w->j) + ", w = " + format_word(w->w.word())
            : "no witness");
    }
    add("infchar", infchar_consistent_with(r, rf, invs), "(lambda + w lambda)/2 + nu");
    if (r.fold_x) {
      std::string detail;
      const auto it = by_label.find({r.table, *r.fold_x});
      if (it == by_label.end()) {
        detail = "partner " + std::to_string(*r.fold_x) + " missing";
      } else {
        const RepRecord& p = *it->second;
        const RepRecord expect = fold_partner(r, rf);
        if (p.lambda != expect.lambda || p.nu != expect.nu || p.infchar != expect.infchar)
          detail = "partner parameters are not the fold image";
        else if (as_multiset(p.spin_lkts) != as_multiset(expect.spin_lkts))
          detail = "partner spin LKTs are not the contragredients";
        else if (p.fold_x != r.x || p.star != r.fold_star)
          detail = "partner does not point back";
      }
      add("fold", detail.empty(), detail.empty() ? "partner " + std::to_string(*r.fold_x) : detail);
    }
    if (!r.spin_lkts.empty()) {
      std::vector<Weight> lkts;
      for (const auto& mu : r.spin_lkts) lkts.push_back(kfund(mu));
      try {
        const auto di = di_parity(lkts, gfund(r.infchar), rf);
        const std::string counts = std::to_string(di.even) + " even, " + std::to_string(di.odd) + " odd";
        const bool pass = r.star ? di.verdict == DiVerdict::Cancels : di.verdict == DiVerdict::DoesNotCancel;
        add("di_parity", pass, std::string(name(di.verdict)) + " (" + counts + ")");
      } catch (const DomainError& e) {
        add("di_parity", false, e.what());
      }
    }
    return out;
  };

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < records.size();) per[i] = check_one(records[i]);
  };
  unsigned n = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(records.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  ValidationReport report;
  report.records = records.size();
  for (auto& part : per)
    for (auto& c : part) report.results.push_back(std::move(c));

  const auto& preset = rf.preset();
  if (!preset.nu_norm_sq.empty()) {
    std::vector<Rational> seen;
    for (const auto& r : records) seen.push_back(rs.norm_sq(r.nu));
    std::sort(seen.begin(), seen.end());
    std::vector<Rational> expected = preset.nu_norm_sq;
    std::sort(expected.begin(), expected.end());
    std::string detail;
    for (std::size_t i = 0; i < seen.size(); ++i) detail += (i ? "," : "") + format(seen[i]);
    report.results.push_back({"*", "nu_norm_sq", seen == expected, detail});
  }
  if (preset.scattered_count) {
    // informational: the tally is reported, not enforced
    report.results.push_back({"*", "count", true,
                              std::to_string(records.size()) + " records (" + std::to_string(*preset.scattered_count) +
                                  " expected)"});
  }
  return report;
}

}  // namespace dirac
