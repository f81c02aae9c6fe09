#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dirac/induction.hpp"
#include "dirac/realform.hpp"
#include "dirac/series.hpp"
#include "dirac/spin.hpp"
#include "dirac/tables.hpp"

using namespace dirac;
using nlohmann::ordered_json;

namespace {

constexpr std::uint64_t kReferencePhiCount = 58061;

struct Globals {
  std::string group = "e6_2";
  std::string format = "tsv";
  std::string config;
};

// Top-level keys map to scalars, scalar lists or lists of flat objects.
// TSV renders scalars as "key<TAB>value" and object lists as a titled table.
void write_tsv(const ordered_json& doc, std::ostream& out) {
  auto cell = [](const ordered_json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + (v[i].is_string() ? v[i].get<std::string>() : v[i].dump());
      return s.empty() ? "-" : s;
    }
    if (v.is_null()) return "-";
    return v.dump();
  };
  std::vector<std::pair<std::string, const ordered_json*>> tables;
  for (const auto& [key, value] : doc.items()) {
    if (value.is_array() && !value.empty() && value[0].is_object())
      tables.emplace_back(key, &value);
    else
      out << key << '\t' << cell(value) << '\n';
  }
  for (const auto& [key, rows] : tables) {
    out << '\n' << key << '\n';
    bool first = true;
    for (const auto& row : *rows) {
      if (first) {
        bool lead = true;
        for (const auto& [col, v] : row.items()) {
          (void)v;
          out << (lead ? "" : "\t") << col;
          lead = false;
        }
        out << '\n';
        first = false;
      }
      bool lead = true;
      for (const auto& [col, v] : row.items()) {
        (void)col;
        out << (lead ? "" : "\t") << cell(v);
        lead = false;
      }
      out << '\n';
    }
  }
}

void emit(const Globals& g, const ordered_json& doc) {
  if (g.format == "json")
    std::cout << doc.dump(2) << '\n';
  else
    write_tsv(doc, std::cout);
}

RealFormPtr load_group(const Globals& g) {
  const auto presets = g.config.empty() ? builtin_presets() : load_presets(g.config);
  const auto it = presets.find(g.group);
  if (it == presets.end()) {
    std::string known;
    for (const auto& [k, v] : presets) known += (known.empty() ? "" : ", ") + k;
    throw DomainError("unknown group '" + g.group + "' (known: " + known + ")");
  }
  return RealFormData::build(it->second);
}

Weight read_weight(const std::string& text, const std::string& basis) {
  return {parse_qvec(text), parse_basis(basis)};
}

std::string kf(const RealFormData& rf, const Weight& w) { return format(rf.convert(w, Basis::KFund).coords); }

std::vector<int> read_support(const std::string& text, int rank) {
  std::vector<int> out;
  if (text.empty() || text == "-") return out;
  for (auto v : parse_intvec(text)) {
    if (v < 1 || v > rank) throw DomainError("support labels are 1.." + std::to_string(rank));
    out.push_back(static_cast<int>(v - 1));
  }
  return out;
}

std::string labels(const std::vector<int>& zero_based) {
  if (zero_based.empty()) return "-";
  std::string s;
  for (std::size_t i = 0; i < zero_based.size(); ++i) s += (i ? "," : "") + std::to_string(zero_based[i] + 1);
  return s;
}

ordered_json rootsys_info(const RealFormData& rf) {
  const RootSystem& rs = rf.system();
  ordered_json doc;
  doc["type"] = rs.label();
  doc["realization"] = std::string(name(rs.realization()));
  doc["rank"] = rs.rank();
  doc["positive_roots"] = rs.num_positive();
  doc["weyl_order"] = rs.weyl_order();
  doc["highest_root"] = format(rs.highest_root().coeffs);
  doc["rho"] = format(rs.rho());
  doc["norm_sq_rho"] = format(rs.norm_sq(rs.rho()));
  ordered_json cartan = ordered_json::array();
  for (std::size_t i = 0; i < rs.cartan().rows(); ++i) cartan.push_back(format(rs.cartan().row(i)));
  doc["cartan"] = cartan;
  return doc;
}

ordered_json realform_show(const RealFormData& rf) {
  const RootSystem& rs = rf.system();
  ordered_json doc;
  doc["group"] = rf.preset().name;
  doc["description"] = rf.preset().description;
  doc["compact_roots"] = rf.compact_roots().size();
  doc["noncompact_roots"] = rf.noncompact_roots().size();
  const std::size_t r = static_cast<std::size_t>(rs.rank());
  doc["dim_k"] = rf.compact_roots().size() + r;
  doc["dim_p"] = rf.noncompact_roots().size();
  doc["k_weyl_order"] = rf.k_weyl_order();
  doc["w1_size"] = rf.w1().size();
  doc["rho_k"] = format(rf.rho_k());
  ordered_json ks = ordered_json::array();
  for (std::size_t i = 0; i < rf.k().rank(); ++i) ks.push_back(format(rf.k().simple_root(i).coeffs));
  doc["k_simple_roots"] = ks;
  if (!rf.preset().pencil_beta.empty()) {
    const Weight beta = kfund(rf.preset().pencil_beta);
    doc["beta"] = format(rf.preset().pencil_beta);
    doc["dim_beta"] = weyl_dim(gfund(rf.to_gfund(beta)), rs, rf.k()).get_str();
  }
  return doc;
}

ordered_json weyl_w1(const RealFormData& rf) {
  ordered_json rows = ordered_json::array();
  for (std::size_t j = 0; j < rf.w1().size(); ++j) {
    const auto& w = rf.w1()[j];
    rows.push_back({{"j", j},
                    {"word", format_word(w.word())},
                    {"length", w.length()},
                    {"rho_n", format(rf.to_kfund(rf.rho_n()[j]))}});
  }
  ordered_json doc;
  doc["count"] = rf.w1().size();
  doc["w1"] = rows;
  return doc;
}

ordered_json spin_norm(const RealFormData& rf, const Weight& mu, const std::optional<Weight>& lambda) {
  const auto sn = spin_norm_sq(mu, rf, lambda);
  ordered_json doc;
  doc["mu"] = kf(rf, mu);
  doc["spin_norm_sq"] = format(sn.norm_sq);
  if (lambda) {
    const Rational l = rf.system().norm_sq(rf.to_gfund(*lambda));
    doc["lambda_norm_sq"] = format(l);
    doc["verdict"] = std::string(name(dirac_test(sn.norm_sq, l)));
  }
  ordered_json rows = ordered_json::array();
  for (const auto& t : sn.minimizers)
    rows.push_back({{"j", t.j},
                    {"conjugate", format(t.conjugate.coords)},
                    {"w", t.w ? format_word(t.w->word()) : std::string("-")}});
  doc["minimizers"] = rows;
  return doc;
}

ordered_json spin_pencil(const RealFormData& rf, const Weight& delta, const PencilOptions& options) {
  const auto p = pencil_min_spin(delta, rf, options);
  ordered_json doc;
  doc["delta"] = kf(rf, delta);
  doc["beta"] = format(rf.preset().pencil_beta);
  doc["min_spin_norm_sq"] = format(p.min_norm_sq);
  doc["argmin"] = p.argmin;
  doc["inconclusive"] = p.inconclusive;
  doc["tail_nondecreasing"] = p.tail_nondecreasing;
  ordered_json values = ordered_json::array();
  for (const auto& v : p.values) values.push_back(format(v));
  doc["values"] = values;
  return doc;
}

ordered_json hp(const RealFormData& rf, const Weight& lambda) {
  const auto w = hp_check(lambda, rf);
  ordered_json doc;
  doc["lambda"] = format(rf.to_gfund(lambda));
  doc["hp"] = w.has_value();
  if (w) {
    doc["delta"] = format(w->delta.coords);
    doc["j"] = w->j;
    doc["w"] = format_word(w->w.word());
  }
  return doc;
}

ordered_json parabolic(const RealFormData& rf, const Weight& H, const std::optional<Weight>& lambda_L) {
  const auto q = build_parabolic(H, rf);
  ordered_json doc;
  doc["H"] = format(q.H.coords);
  doc["dim_u"] = q.u.size();
  doc["dim_u_k"] = q.u_compact.size();
  doc["dim_u_p"] = q.u_noncompact.size();
  doc["S"] = q.S();
  doc["l_positive_roots"] = q.l_positive.num_positive();
  doc["rho_u"] = format(q.rho_u);
  doc["rho_u_k"] = format(q.rho_u_k);
  doc["rho_u_p"] = format(q.rho_u_p);
  doc["rho_lk"] = format(q.rho_lk);
  if (lambda_L) {
    doc["lambda_L"] = format(rf.to_gfund(*lambda_L));
    doc["range"] = std::string(name(range_test(*lambda_L, q, rf)));
  }
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations for Dirac cohomology of real reductive groups"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--group", g.group, "group preset")->capture_default_str();
  app.add_option("--format", g.format, "output encoding")->check(CLI::IsMember({"json", "tsv"}))->capture_default_str();
  app.add_option("--config", g.config, "presets file (JSON)")->check(CLI::ExistingFile);

  std::string basis = "gfund";
  auto add_basis = [&](CLI::App* sub) {
    sub->add_option("--basis", basis, "coordinates of vector arguments: gfund, kfund, root, ambient")->capture_default_str();
  };

  auto* rootsys = app.add_subcommand("rootsys", "root system of the group")->require_subcommand(1);
  auto* rootsys_info_cmd = rootsys->add_subcommand("info", "type, sizes, Cartan matrix");

  auto* realform = app.add_subcommand("realform", "real form data")->require_subcommand(1);
  auto* realform_show_cmd = realform->add_subcommand("show", "k, p and the coset count");

  auto* weyl = app.add_subcommand("weyl", "Weyl group")->require_subcommand(1);
  auto* weyl_w1_cmd = weyl->add_subcommand("w1", "minimal coset representatives and rho_n^(j)");

  auto* spin = app.add_subcommand("spin", "spin norms")->require_subcommand(1);
  std::string mu_text, lambda_text;
  auto* spin_norm_cmd = spin->add_subcommand("norm", "spin norm of a K-type");
  spin_norm_cmd->add_option("mu", mu_text, "highest weight (k-fundamental by default)")->required();
  spin_norm_cmd->add_option("--lambda", lambda_text, "infinitesimal character, g-fundamental");
  std::string mu_basis = "kfund";
  spin_norm_cmd->add_option("--basis", mu_basis, "coordinates of mu")->capture_default_str();
  auto* spin_pencil_cmd = spin->add_subcommand("pencil", "minimum spin norm along delta + n beta");
  spin_pencil_cmd->add_option("delta", mu_text, "starting K-type")->required();
  spin_pencil_cmd->add_option("--basis", mu_basis, "coordinates of delta")->capture_default_str();
  spin_pencil_cmd->add_option("--lambda", lambda_text, "infinitesimal character for the stopping window");
  std::size_t cap = 0;
  spin_pencil_cmd->add_option("--cap", cap, "evaluate exactly n = 0..cap");

  auto* hp_cmd_group = app.add_subcommand("hp", "Huang-Pandzic condition")->require_subcommand(1);
  auto* hp_check_cmd = hp_cmd_group->add_subcommand("check", "search for a witness");
  hp_check_cmd->add_option("lambda", lambda_text, "infinitesimal character")->required();
  add_basis(hp_check_cmd);

  auto* para = app.add_subcommand("parabolic", "theta-stable parabolics")->require_subcommand(1);
  auto* para_info_cmd = para->add_subcommand("info", "u, l and the rho shifts");
  std::string support_text, h_text;
  para_info_cmd->add_option("--support", support_text, "1-based simple roots generating l (\"-\" for none)");
  para_info_cmd->add_option("--H", h_text, "grading element instead of a support");
  para_info_cmd->add_option("--lambda", lambda_text, "lambda_L for the range test");
  add_basis(para_info_cmd);

  auto* phi = app.add_subcommand("phi", "candidate infinitesimal characters")->require_subcommand(1);
  auto* phi_enum_cmd = phi->add_subcommand("enumerate", "enumerate Phi under the involution relaxation");
  bool all_involutions = false, with_hp = false;
  unsigned threads = 0;
  std::string dump_path;
  phi_enum_cmd->add_flag("--all-involutions", all_involutions, "use every involution of W, not only fully supported ones");
  phi_enum_cmd->add_flag("--hp", with_hp, "evaluate the HP condition on every member");
  phi_enum_cmd->add_option("--threads", threads, "0 for hardware concurrency");
  phi_enum_cmd->add_option("--dump", dump_path, "write the members as TSV");

  auto* strings = app.add_subcommand("strings", "string counting")->require_subcommand(1);
  auto* strings_count_cmd = strings->add_subcommand("count", "N_i and the total from N(S) data");
  std::string strings_path = std::string(DIRAC_DATA_DIR) + "/e6_2_strings.tsv";
  strings_count_cmd->add_option("--file", strings_path, "N(S) table")->check(CLI::ExistingFile)->capture_default_str();

  auto* tables = app.add_subcommand("tables", "representation tables")->require_subcommand(1);
  auto* tables_validate_cmd = tables->add_subcommand("validate", "check every record");
  std::string tables_path = std::string(DIRAC_DATA_DIR) + "/e6_2_tables.tsv";
  tables_validate_cmd->add_option("--file", tables_path, "table TSV")->check(CLI::ExistingFile)->capture_default_str();
  tables_validate_cmd->add_option("--threads", threads, "0 for hardware concurrency");

  CLI11_PARSE(app, argc, argv);

  try {
    const auto rf = load_group(g);
    const int rank = rf->system().rank();
    if (rootsys_info_cmd->parsed()) {
      emit(g, rootsys_info(*rf));
    } else if (realform_show_cmd->parsed()) {
      emit(g, realform_show(*rf));
    } else if (weyl_w1_cmd->parsed()) {
      emit(g, weyl_w1(*rf));
    } else if (spin_norm_cmd->parsed()) {
      std::optional<Weight> lambda;
      if (!lambda_text.empty()) lambda = gfund(parse_qvec(lambda_text));
      emit(g, spin_norm(*rf, read_weight(mu_text, mu_basis), lambda));
    } else if (spin_pencil_cmd->parsed()) {
      PencilOptions options;
      if (spin_pencil_cmd->count("--cap")) options.cap = cap;
      if (!lambda_text.empty()) options.lambda = gfund(parse_qvec(lambda_text));
      emit(g, spin_pencil(*rf, read_weight(mu_text, mu_basis), options));
    } else if (hp_check_cmd->parsed()) {
      emit(g, hp(*rf, read_weight(lambda_text, basis)));
    } else if (para_info_cmd->parsed()) {
      if (support_text.empty() == h_text.empty()) throw DomainError("give exactly one of --support and --H");
      const Weight H = h_text.empty() ? grading_from_support(read_support(support_text, rank), rf->system())
                                      : read_weight(h_text, basis);
      std::optional<Weight> lambda;
      if (!lambda_text.empty()) lambda = read_weight(lambda_text, basis);
      auto doc = parabolic(*rf, H, lambda);
      if (!support_text.empty()) doc["support"] = labels(read_support(support_text, rank));
      emit(g, doc);
    } else if (phi_enum_cmd->parsed()) {
      const auto start = std::chrono::steady_clock::now();
      const auto invs = all_involutions ? involutions(rf->system()) : full_support_involutions(rf->system());
      PhiOptions options;
      options.threads = threads;
      options.with_hp = with_hp;
      const auto result = enumerate_phi(*rf, invs, options);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      ordered_json doc;
      doc["involutions"] = invs.size();
      doc["caps"] = format(IntVec(result.caps.begin(), result.caps.end()));
      doc["scanned"] = result.scanned;
      doc["count"] = result.members.size();
      if (rf->preset().name == "e6_2") {
        doc["reference_count"] = kReferencePhiCount;
        doc["delta"] = static_cast<std::int64_t>(result.members.size()) - static_cast<std::int64_t>(kReferencePhiCount);
      }
      if (with_hp)
        doc["hp_pass"] = std::count_if(result.members.begin(), result.members.end(),
                                       [](const InfCharCandidate& c) { return c.hp_pass; });
      doc["seconds"] = secs;
      doc["warnings"] = result.warnings;
      if (!dump_path.empty()) {
        std::ofstream out(dump_path);
        if (!out) throw DomainError("cannot write " + dump_path);
        for (const auto& c : result.members) out << format_candidate_tsv(c) << '\n';
      }
      emit(g, doc);
    } else if (strings_count_cmd->parsed()) {
      std::ifstream in(strings_path);
      const auto table = CountTable::read_tsv(in, rank);
      const auto sc = count_strings(table);
      ordered_json doc;
      for (std::size_t i = 0; i < sc.N.size(); ++i) doc["N" + std::to_string(i)] = sc.N[i];
      doc["total"] = sc.total;
      emit(g, doc);
    } else if (tables_validate_cmd->parsed()) {
      const auto records = ingest_tables(tables_path, *rf);
      const auto report = validate(records, *rf, threads);
      if (g.format == "json")
        report.write_json(std::cout);
      else
        report.write_tsv(std::cout);
      std::cerr << report.records << " records, " << report.results.size() << " checks, " << report.failures()
                << " failed\n";
      return report.ok() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
