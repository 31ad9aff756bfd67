#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "forge/forge.hpp"

using namespace forge;
using nlohmann::json;

namespace {

struct Common {
  std::string json_path;
  std::string out_path;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--json", c.json_path, "Write a JSON summary to this file");
  cmd->add_option("--out", c.out_path, "Write the main artifact to this file");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

void finish(const Common& c, const std::string& text, const std::string& artifact, const json& summary) {
  std::cout << text;
  if (!c.out_path.empty()) write_file(c.out_path, artifact);
  if (!c.json_path.empty()) write_file(c.json_path, summary.dump(2) + "\n");
}

std::string ideal_text(const Ring& R, const std::vector<Polynomial>& gens) {
  std::ostringstream os;
  write_ideal(os, R, gens);
  return os.str();
}

std::string seed_header(const std::string& cmd, std::uint64_t seed) {
  return "// forge " + cmd + ", seed " + std::to_string(seed) + "\n";
}

json certificate_json(const GorensteinCertificate& c) { return to_json(c); }

json section_json(const SectionResult& s) {
  std::vector<Polynomial> entries = s.s.entries;
  return {{"module_degree", s.module_degree},
          {"entries", to_json(entries)},
          {"affine_dim", s.affine_dim},
          {"regular", s.regular},
          {"zero_locus", to_json(s.zero_locus.generators())}};
}

std::string lines(const std::vector<std::string>& v) {
  std::string out;
  for (auto& l : v) out += l + "\n";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"forge: Gorenstein subschemes from sections of Buchsbaum-Rim sheaves"};
  app.require_subcommand(1);

  // br
  Common br_c;
  int br_t = 1, br_r = 1, br_e = 1, br_d = 1, br_n = 3;
  std::optional<std::uint32_t> br_p;
  std::optional<std::uint64_t> br_seed;
  std::string br_matrix;
  bool br_protocol = false;
  auto* br_cmd = app.add_subcommand("br", "Top-dimensional part of the zero locus of a random regular section");
  br_cmd->add_option("--t", br_t, "Rows of the matrix");
  auto* br_r_opt = br_cmd->add_option("--r", br_r, "Kernel rank (columns minus rows)");
  br_cmd->add_option("--entry-deg", br_e, "Degree of the matrix entries");
  br_cmd->add_option("--sec-deg", br_d, "Degree of the section entries");
  br_cmd->add_option("--n", br_n, "Projective dimension");
  br_cmd->add_option("--char", br_p, "Characteristic");
  br_cmd->add_option("--seed", br_seed, "Random seed")->required();
  br_cmd->add_option("--matrix", br_matrix, "Use this matrix file instead of a random matrix");
  br_cmd->add_flag("--protocol", br_protocol, "Print the step log");
  add_common(br_cmd, br_c);

  // section
  Common sec_c;
  std::string sec_matrix;
  int sec_deg = 0;
  std::optional<int> sec_r;
  std::optional<std::uint64_t> sec_seed;
  auto* sec_cmd = app.add_subcommand("section", "Random kernel element and the ideal of its zero locus");
  sec_cmd->add_option("--matrix", sec_matrix, "Matrix file")->required();
  sec_cmd->add_option("--deg", sec_deg, "Module degree of the section")->required();
  sec_cmd->add_option("--r", sec_r, "Kernel rank for the regularity check");
  sec_cmd->add_option("--seed", sec_seed, "Random seed")->required();
  add_common(sec_cmd, sec_c);

  // top
  Common top_c;
  std::string top_ideal;
  int top_codim = 0;
  std::optional<std::uint64_t> top_seed;
  auto* top_cmd = app.add_subcommand("top", "Unmixed part of given codimension, (J : (J : I))");
  top_cmd->add_option("--ideal", top_ideal, "Ideal file")->required();
  top_cmd->add_option("--codim", top_codim, "Codimension")->required();
  top_cmd->add_option("--seed", top_seed, "Random seed")->required();
  add_common(top_cmd, top_c);

  // hilb
  Common hilb_c;
  std::string hilb_ideal;
  auto* hilb_cmd = app.add_subcommand("hilb", "Hilbert series, dimension and degree");
  hilb_cmd->add_option("--ideal", hilb_ideal, "Ideal file")->required();
  add_common(hilb_cmd, hilb_c);

  // res
  Common res_c;
  std::string res_ideal;
  bool res_minimal = false;
  auto* res_cmd = app.add_subcommand("res", "Free resolution and graded Betti numbers");
  res_cmd->add_option("--ideal", res_ideal, "Ideal file")->required();
  res_cmd->add_flag("--minimal", res_minimal, "Minimal resolution");
  add_common(res_cmd, res_c);

  // minors
  Common min_c;
  std::string min_matrix;
  int min_size = 1;
  auto* min_cmd = app.add_subcommand("minors", "Ideal of t x t minors");
  min_cmd->add_option("--matrix", min_matrix, "Matrix file")->required();
  min_cmd->add_option("--size", min_size, "Minor size")->required();
  add_common(min_cmd, min_c);

  // pfaffians
  Common pf_c;
  std::string pf_matrix;
  auto* pf_cmd = app.add_subcommand("pfaffians", "Maximal Pfaffians of an odd skew matrix");
  pf_cmd->add_option("--matrix", pf_matrix, "Matrix file")->required();
  add_common(pf_cmd, pf_c);

  // predict
  Common pr_c;
  std::string pr_spec;
  auto* pr_cmd = app.add_subcommand("predict", "Chern coefficients and expected resolution shapes");
  pr_cmd->add_option("--spec", pr_spec, "Twist config (a, b, p, n) or generalized kernel config (e1, e2, d1..d3, l, d, n)")
      ->required();
  add_common(pr_cmd, pr_c);

  // link
  Common ln_c;
  std::string ln_phi, ln_ideal;
  std::optional<int> ln_deg;
  std::optional<std::uint64_t> ln_seed;
  auto* ln_cmd = app.add_subcommand("link", "Direct Gorenstein link through a common section");
  ln_cmd->add_option("--phi", ln_phi, "Matrix file")->required();
  ln_cmd->add_option("--ideal", ln_ideal, "Ideal file of V")->required();
  ln_cmd->add_option("--deg", ln_deg, "Module degree of the common section");
  ln_cmd->add_option("--seed", ln_seed, "Random seed")->required();
  add_common(ln_cmd, ln_c);

  // genbr
  Common gb_c;
  std::string gb_ideal, gb_ci;
  std::optional<int> gb_l;
  int gb_d = 0;
  std::optional<std::uint64_t> gb_seed;
  auto* gb_cmd = app.add_subcommand("genbr", "Section of a generalized kernel over a Gorenstein codim-3 scheme");
  gb_cmd->add_option("--gorenstein", gb_ideal, "Ideal file of G")->required();
  gb_cmd->add_option("--ci", gb_ci, "Complete intersection degrees d1,d2,d3")->required();
  gb_cmd->add_option("--l", gb_l, "Twist l of G (checked against its resolution)");
  gb_cmd->add_option("--d", gb_d, "Degree d")->required();
  gb_cmd->add_option("--seed", gb_seed, "Random seed")->required();
  add_common(gb_cmd, gb_c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*br_cmd) {
      std::ostringstream os;
      json j;
      j["command"] = "br";
      j["seed"] = *br_seed;
      BrRun run = [&] {
        if (!br_matrix.empty()) {
          GradedMatrix M = load_matrix(br_matrix);
          int r = br_r_opt->count() ? br_r : static_cast<int>(M.cols()) - static_cast<int>(M.rows());
          Rng rng(*br_seed);
          j["matrix"] = br_matrix;
          j["r"] = r;
          return br_run(M, r, br_d, rng);
        }
        ConstructionSpec spec{br_t, br_r, br_e, br_d, br_n, br_p ? *br_p : default_characteristic(), *br_seed};
        j["spec"] = {{"t", spec.t}, {"r", spec.r}, {"entry_degree", spec.entry_degree},
                     {"section_degree", spec.section_degree}, {"n", spec.n}, {"char", spec.p}};
        return br_run(spec);
      }();
      os << seed_header("br", *br_seed);
      if (br_protocol) os << lines(run.protocol);
      std::string artifact = ideal_text(run.top.ring(), run.top.minimal_generators());
      os << artifact;
      int D = module_degree_for(run.matrix, run.section_degree);
      TwistSpec ts = twist_spec_of(run.matrix, D);
      auto rep = verify_construction(run.top, ts);
      const HilbertReport& h = run.top.hilbert();
      if (br_protocol) {
        os << format_hilb(h);
        os << "// predicted degree = " << rep.predicted_degree.str() << '\n';
        os << "// regularity  = " << rep.regularity << '\n';
        os << "// resolution  " << rep.betti.display() << '\n';
        os << "// gorenstein  = " << (rep.certificate.gorenstein ? "yes" : "no") << '\n';
      }
      j["section_degree"] = run.section_degree;
      j["generators"] = to_json(run.top.minimal_generators());
      j["hilbert"] = to_json(h);
      j["predicted_degree"] = rep.predicted_degree.str();
      j["degree_matches"] = rep.degree_matches;
      j["regularity"] = rep.regularity;
      j["certificate"] = certificate_json(rep.certificate);
      if (rep.shape) j["expected_shape"] = to_json(*rep.shape);
      j["shape_embeds"] = rep.embeds;
      j["shape_exact"] = rep.exact_shape;
      j["protocol"] = run.protocol;
      finish(br_c, os.str(), artifact, j);
    } else if (*sec_cmd) {
      GradedMatrix M = load_matrix(sec_matrix);
      Rng rng(*sec_seed);
      SectionResult s = section(M, sec_deg, rng, sec_r ? *sec_r : -1);
      std::ostringstream os;
      os << seed_header("section", *sec_seed);
      os << "// module degree " << s.module_degree << ", dim(std) = " << s.affine_dim
         << (s.regular ? " (regular)" : " (not regular)") << '\n';
      std::string artifact = ideal_text(M.ring(), s.zero_locus.generators());
      os << artifact;
      json j = section_json(s);
      j["command"] = "section";
      j["seed"] = *sec_seed;
      finish(sec_c, os.str(), artifact, j);
    } else if (*top_cmd) {
      Ideal I = load_ideal(top_ideal);
      Rng rng(*top_seed);
      Ideal T = top_dimensional_part(I, top_codim, rng);
      std::ostringstream os;
      os << seed_header("top", *top_seed);
      std::string artifact = ideal_text(T.ring(), T.minimal_generators());
      os << artifact;
      json j{{"command", "top"}, {"seed", *top_seed}, {"generators", to_json(T.minimal_generators())},
             {"hilbert", to_json(T.hilbert())}};
      finish(top_c, os.str(), artifact, j);
    } else if (*hilb_cmd) {
      Ideal I = load_ideal(hilb_ideal);
      const HilbertReport& h = I.hilbert();
      std::string text = format_hilb(h);
      json j{{"command", "hilb"}, {"hilbert", to_json(h)}};
      if (h.dim >= 1) j["arithmetic_genus"] = arithmetic_genus(h);
      finish(hilb_c, text, text, j);
    } else if (*res_cmd) {
      Ideal I = load_ideal(res_ideal);
      Resolution res = free_resolution(I, res_minimal);
      BettiTable b = betti(res);
      std::ostringstream os, art;
      os << "// " << b.display() << '\n' << b.to_text();
      write_resolution(art, res);
      json j{{"command", "res"}, {"minimal", res.minimal}, {"betti", to_json(b)}, {"display", b.display()}};
      if (res.minimal) {
        int reg = regularity(res);
        os << "// regularity = " << reg << '\n';
        j["regularity"] = reg;
      }
      finish(res_c, os.str(), art.str(), j);
    } else if (*min_cmd) {
      GradedMatrix M = load_matrix(min_matrix);
      Ideal I = minors_ideal(M, static_cast<std::size_t>(min_size));
      std::string artifact = ideal_text(M.ring(), I.generators());
      json j{{"command", "minors"}, {"size", min_size}, {"generators", to_json(I.generators())},
             {"hilbert", to_json(I.hilbert())}};
      finish(min_c, artifact, artifact, j);
    } else if (*pf_cmd) {
      GradedMatrix M = load_matrix(pf_matrix);
      Ideal I = pfaffians(M);
      std::string artifact = ideal_text(M.ring(), I.generators());
      json j{{"command", "pfaffians"}, {"generators", to_json(I.generators())}, {"hilbert", to_json(I.hilbert())}};
      finish(pf_c, artifact, artifact, j);
    } else if (*pr_cmd) {
      std::ifstream in(pr_spec);
      if (!in) throw UsageError("cannot open " + pr_spec);
      auto kv = read_config(in);
      std::ostringstream os;
      json j{{"command", "predict"}};
      ExpectedShape shape;
      if (kv.count("e1")) {
        GenBRSpec g = genbr_spec_from_config(kv);
        shape = expected_resolution_generalized_kernel(g);
        os << "// alpha = " << g.alpha() << ", b = " << g.b() << '\n';
        if (!g.verified_setting()) os << "// n != 3: shape unverified\n";
        j["alpha"] = g.alpha();
        j["b"] = g.b();
        j["verified_setting"] = g.verified_setting();
      } else {
        TwistSpec t = twist_spec_from_config(kv);
        auto c = chern_coefficients(t);
        os << "// c =";
        std::vector<std::string> cs;
        for (auto& x : c.c) {
          os << ' ' << x.str();
          cs.push_back(x.str());
        }
        os << "\n// c1 = " << c.c1.str() << "\n// degree = " << c.expected_degree.str() << '\n';
        j["c"] = cs;
        j["c1"] = c.c1.str();
        j["degree"] = c.expected_degree.str();
        if (t.r() == 3) {
          BigInt f = degree_formula_r3(t.a, t.b);
          os << "// degree formula (rank 3) = " << f.str() << '\n';
          j["degree_formula_r3"] = f.str();
        }
        shape = expected_resolution_general(t);
      }
      os << "// " << shape.betti().display() << '\n';
      std::string artifact = shape.to_text();
      os << artifact;
      j["shape"] = to_json(shape);
      finish(pr_c, os.str(), artifact, j);
    } else if (*ln_cmd) {
      GradedMatrix phi = load_matrix(ln_phi);
      Ideal V = load_ideal(ln_ideal);
      Rng rng(*ln_seed);
      LinkRecord rec = gorenstein_link(phi, V, ln_deg, rng);
      std::ostringstream os;
      os << seed_header("link", *ln_seed) << lines(rec.protocol);
      os << "// Z(s)\n" << ideal_text(rec.I_Zs.ring(), rec.I_Zs.generators());
      os << format_hilb(rec.I_Zs.hilbert());
      os << "// X\n" << ideal_text(rec.I_X.ring(), rec.I_X.minimal_generators());
      os << "// resolution " << rec.certificate.betti.display() << '\n';
      os << "// gorenstein = " << (rec.certificate.gorenstein ? "yes" : "no") << '\n';
      os << "// W\n" << ideal_text(rec.I_W.ring(), rec.I_W.minimal_generators());
      json j{{"command", "link"},
             {"seed", *ln_seed},
             {"module_degree", rec.degree},
             {"section", section_json(rec.section)},
             {"Zs", {{"generators", to_json(rec.I_Zs.generators())}, {"hilbert", to_json(rec.I_Zs.hilbert())}}},
             {"X", {{"generators", to_json(rec.I_X.minimal_generators())}, {"hilbert", to_json(rec.I_X.hilbert())}}},
             {"W", {{"generators", to_json(rec.I_W.minimal_generators())}, {"hilbert", to_json(rec.I_W.hilbert())}}},
             {"certificate", certificate_json(rec.certificate)},
             {"contains_V", rec.contains_V},
             {"protocol", rec.protocol}};
      finish(ln_c, os.str(), ideal_text(rec.I_X.ring(), rec.I_X.minimal_generators()), j);
    } else if (*gb_cmd) {
      Ideal G = load_ideal(gb_ideal);
      auto ci = detail::int_list(gb_ci);
      if (ci.size() != 3) throw UsageError("--ci needs three degrees d1,d2,d3");
      Rng rng(*gb_seed);
      GenBRRun run = generalized_br_run(G, ci[0], ci[1], ci[2], gb_l, gb_d, rng);
      std::ostringstream os;
      os << seed_header("genbr", *gb_seed) << lines(run.protocol);
      if (!run.verified_setting) os << "// n != 3: shape comparison unverified\n";
      os << "// expected " << run.shape.betti().display() << '\n';
      os << "// embeds after ghost cancellation = " << (run.embeds ? "yes" : "no") << '\n';
      os << "// almost complete intersection = " << (run.almost_complete_intersection ? "yes" : "no") << '\n';
      std::string artifact = ideal_text(run.I_Zs.ring(), run.I_Zs.generators());
      os << artifact;
      json j{{"command", "genbr"},
             {"seed", *gb_seed},
             {"l", run.spec.l},
             {"b", run.spec.b()},
             {"V", {{"generators", to_json(run.I_V.minimal_generators())}, {"betti", to_json(run.v_betti)}}},
             {"Zs", {{"generators", to_json(run.I_Zs.generators())}, {"hilbert", to_json(run.I_Zs.hilbert())}}},
             {"betti", to_json(run.betti)},
             {"expected_shape", to_json(run.shape)},
             {"embeds", run.embeds},
             {"almost_complete_intersection", run.almost_complete_intersection},
             {"verified_setting", run.verified_setting},
             {"protocol", run.protocol}};
      finish(gb_c, os.str(), artifact, j);
    }
  } catch (const MathError& e) {
    std::cerr << "forge: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "forge: " << e.what() << '\n';
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "forge: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
