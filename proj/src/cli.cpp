#include "shiftlab/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "shiftlab/experiments.hpp"
#include "shiftlab/layers.hpp"
#include "shiftlab/ribbons.hpp"
#include "shiftlab/sft1d.hpp"
#include "shiftlab/spacer1d.hpp"
#include "shiftlab/spacer2d.hpp"
#include "shiftlab/words.hpp"

namespace shiftlab {

namespace {

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("range must look like lo:hi");
  return {std::stoll(text.substr(0, colon)), std::stoll(text.substr(colon + 1))};
}

Rect parse_rect(const std::string& text) {
  std::istringstream in(text);
  std::string part;
  std::vector<std::int64_t> v;
  while (std::getline(in, part, ':')) v.push_back(std::stoll(part));
  if (v.size() != 4)
    throw std::invalid_argument("rect must look like x0:y0:x1:y1");
  return Rect{v[0], v[1], v[2], v[3]};
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, sep))
    if (!part.empty()) out.push_back(part);
  return out;
}

Sft1D sft_from_flags(const std::string& alphabet, const std::string& forbid,
                     const std::string& file) {
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("cannot open '" + file + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return Sft1D::from_text(ss.str());
  }
  return Sft1D(alphabet, split(forbid, ','));
}

// "periodic:01", "ep:left|center|right@offset", "lower:2/5",
// "upper:(a+b*sqrt(d))/c", optionally "...:intercept" on characteristic kinds
SeqDesc parse_seq(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("sequence must be kind:data");
  std::string kind = text.substr(0, colon);
  std::string data = text.substr(colon + 1);
  if (kind == "periodic") return SeqDesc::periodic(data);
  if (kind == "ep") {
    auto at = data.find('@');
    std::int64_t offset = 0;
    if (at != std::string::npos) {
      offset = std::stoll(data.substr(at + 1));
      data = data.substr(0, at);
    }
    auto parts = split(data, '|');
    if (parts.size() == 2) parts = {parts[0], "", parts[1]};
    if (parts.size() != 3)
      throw std::invalid_argument("ep sequence must be left|center|right@offset");
    return SeqDesc::eventually_periodic(parts[0], parts[1], parts[2], offset);
  }
  if (kind == "lower" || kind == "upper") {
    auto parts = split(data, ';');
    ExactReal intercept;
    if (parts.size() == 2) intercept = ExactReal::parse(parts[1]);
    return SeqDesc::characteristic(kind == "upper", ExactReal::parse(parts[0]),
                                   intercept);
  }
  throw std::invalid_argument("unknown sequence kind '" + kind + "'");
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::invalid_argument("cannot write '" + out_path + "'");
  f << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"balanced-word and shift-of-finite-type workbench"};
  app.require_subcommand(1);

  // ---- words ----------------------------------------------------------
  auto* words = app.add_subcommand("words", "balanced word operations");
  words->require_subcommand(1);
  std::string w_alpha = "1/2", w_range = "0:9", w_intercept, w_word, w_joint;
  bool w_upper = false;
  std::int64_t w_k = 1;

  auto* wchar = words->add_subcommand("char", "characteristic sequence window");
  wchar->add_option("--alpha", w_alpha, "slope, p/q or (a+b*sqrt(d))/c");
  wchar->add_option("--range", w_range, "index range lo:hi");
  wchar->add_option("--intercept", w_intercept, "exact intercept");
  wchar->add_flag("--upper", w_upper, "upper characteristic sequence");
  auto* wcheck = words->add_subcommand("check", "balance checks");
  wcheck->add_option("--word", w_word)->required();
  wcheck->add_option("--k", w_k, "balance constant");
  wcheck->add_option("--joint", w_joint, "second word for joint balance");
  auto* winterval = words->add_subcommand("interval", "slope interval of a word");
  winterval->add_option("--word", w_word)->required();
  winterval->add_option("--joint", w_joint, "second word: intersect intervals");

  // ---- sft1d ----------------------------------------------------------
  auto* sft1d_cmd = app.add_subcommand("sft1d", "one-dimensional SFT engine");
  sft1d_cmd->require_subcommand(1);
  std::string s_alphabet = "01", s_forbid, s_file, s_out;
  std::int64_t s_n = 3, s_nmax = 3, s_radius = 0;
  auto add_sft_flags = [&](CLI::App* cmd) {
    cmd->add_option("--alphabet", s_alphabet, "alphabet letters");
    cmd->add_option("--forbid", s_forbid, "comma-separated forbidden words");
    cmd->add_option("--file", s_file, "forbidden list file");
  };
  auto* slang = sft1d_cmd->add_subcommand("language", "legal words of a length");
  add_sft_flags(slang);
  slang->add_option("--n", s_n, "word length");
  auto* sent = sft1d_cmd->add_subcommand("entropy", "topological entropy");
  add_sft_flags(sent);
  auto* srep = sft1d_cmd->add_subcommand("report", "finite-scale condition report");
  add_sft_flags(srep);
  srep->add_option("--nmax", s_nmax, "largest word length");
  srep->add_option("--radius", s_radius, "annulus radius (0: schedule)");
  auto* sgraph = sft1d_cmd->add_subcommand("chain", "chain graph exports");
  add_sft_flags(sgraph);
  sgraph->add_option("--n", s_n, "word length");
  sgraph->add_option("--radius", s_radius, "annulus radius (0: schedule)");
  bool s_dot = false;
  sgraph->add_flag("--dot", s_dot, "emit DOT instead of an edge list");
  sgraph->add_option("--out", s_out, "output path");

  // ---- spacer1d -------------------------------------------------------
  auto* sp1 = app.add_subcommand("spacer1d", "one-dimensional spacer transform");
  sp1->require_subcommand(1);
  std::string p_alphabet = "ab", p_forbid, p_word, p_gaps, p_project;
  auto* pflist = sp1->add_subcommand("flist", "forbidden list of the image");
  pflist->add_option("--alphabet", p_alphabet);
  pflist->add_option("--forbid", p_forbid, "base forbidden words");
  auto* ptrans = sp1->add_subcommand("transform", "induce or project words");
  ptrans->add_option("--word", p_word, "base word to induce");
  ptrans->add_option("--gaps", p_gaps, "comma-separated gaps in {2,3,4}");
  ptrans->add_option("--project", p_project, "image word to project");

  // ---- grid2d ---------------------------------------------------------
  auto* g2 = app.add_subcommand("grid2d", "ribbon system windows");
  g2->require_subcommand(1);
  std::string g_in, g_rules = "xh", g_out;
  std::int64_t g_width = 8, g_height = 8, g_margin = 64;
  std::uint64_t g_seed = 1;
  auto* gval = g2->add_subcommand("validate", "check a window against the rules");
  gval->add_option("--in", g_in, "grid file")->required();
  gval->add_option("--rules", g_rules, "xh, xv or layers");
  auto* gfill = g2->add_subcommand("fill", "complete or generate a window");
  gfill->add_option("--rules", g_rules, "xh or xv");
  gfill->add_option("--width", g_width);
  gfill->add_option("--height", g_height);
  gfill->add_option("--in", g_in, "optional partial grid file");
  gfill->add_option("--seed", g_seed, "letter-order seed");
  gfill->add_option("--out", g_out, "output path");
  auto* gembed = g2->add_subcommand("embed", "homoclinic embedding of a window");
  gembed->add_option("--in", g_in, "grid file")->required();
  gembed->add_option("--margin", g_margin);
  gembed->add_option("--out", g_out, "output path");

  // ---- layers ---------------------------------------------------------
  auto* ly = app.add_subcommand("layers", "three-layer balanced-plane windows");
  ly->require_subcommand(1);
  std::string l_a, l_b, l_rect = "0:0:4:4", l_free, l_out;
  auto* lbuild = ly->add_subcommand("build", "build a point window");
  lbuild->add_option("--a", l_a, "first sequence description")->required();
  lbuild->add_option("--b", l_b, "second sequence description")->required();
  lbuild->add_option("--rect", l_rect, "window x0:y0:x1:y1");
  lbuild->add_option("--free", l_free, "free rows, j=v comma separated");
  lbuild->add_option("--out", l_out, "output path");
  auto* lclass = ly->add_subcommand("classify", "classify a jointly balanced pair");
  lclass->add_option("--a", l_a)->required();
  lclass->add_option("--b", l_b)->required();

  // ---- spacer2d -------------------------------------------------------
  auto* sp2 = app.add_subcommand("spacer2d", "two-dimensional spacer windows");
  sp2->require_subcommand(1);
  std::string q_h, q_v, q_letters, q_alphabet = "ab", q_in, q_region = "0:0:3:3",
              q_axis = "h", q_out;
  int q_sign = 1;
  auto* qsup = sp2->add_subcommand("superimpose", "superimpose base letters");
  qsup->add_option("--hgrid", q_h, "horizontal flag grid file")->required();
  qsup->add_option("--vgrid", q_v, "vertical flag grid file")->required();
  qsup->add_option("--letters", q_letters, "i,j=c semicolon separated");
  qsup->add_option("--alphabet", q_alphabet);
  qsup->add_option("--out", q_out, "output path");
  auto* qmove = sp2->add_subcommand("move", "meander exchange move");
  qmove->add_option("--in", q_in, "layered grid file")->required();
  qmove->add_option("--axis", q_axis, "h or v");
  qmove->add_option("--sign", q_sign, "+1 or -1");
  qmove->add_option("--region", q_region, "x0:y0:x1:y1");
  qmove->add_option("--alphabet", q_alphabet);
  qmove->add_option("--out", q_out, "output path");

  // ---- experiment -----------------------------------------------------
  auto* ex = app.add_subcommand("experiment", "reproducible experiments");
  ex->require_subcommand(1);
  std::string e_instance = "golden", e_out;
  std::int64_t e_nmax = 4, e_radius = 0;
  std::uint64_t e_seed = 0;
  auto* echain = ex->add_subcommand("chain-diameter", "chain graph growth table");
  echain->add_option("--instance", e_instance, "golden, full or spacer-balanced");
  echain->add_option("--nmax", e_nmax);
  echain->add_option("--radius", e_radius, "fixed annulus radius (0: schedule)");
  echain->add_option("--seed", e_seed);
  echain->add_option("--out", e_out, "CSV path");
  auto* eslope = ex->add_subcommand("slope-map", "slope window estimates");
  eslope->add_option("--seed", e_seed);
  eslope->add_option("--out", e_out, "CSV path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (wchar->parsed()) {
      auto [lo, hi] = parse_range(w_range);
      ExactReal intercept;
      if (!w_intercept.empty()) intercept = ExactReal::parse(w_intercept);
      Slope alpha = ExactReal::parse(w_alpha);
      Word win = w_upper ? upper_char_window(alpha, lo, hi, intercept)
                         : lower_char_window(alpha, lo, hi, intercept);
      out << win.letters() << "\n";
    } else if (wcheck->parsed()) {
      Word a = Word::parse(w_word);
      if (w_joint.empty())
        out << (is_k_balanced(a, w_k) ? "true" : "false") << "\n";
      else
        out << (is_jointly_balanced(a, Word::parse(w_joint)) ? "true" : "false")
            << "\n";
    } else if (winterval->parsed()) {
      Word a = Word::parse(w_word);
      if (w_joint.empty()) {
        out << slope_interval(a).str() << "\n";
      } else {
        auto iv = joint_slope_interval(a, Word::parse(w_joint));
        out << (iv ? iv->str() : std::string("empty")) << "\n";
      }
    } else if (slang->parsed()) {
      Sft1D sft = sft_from_flags(s_alphabet, s_forbid, s_file);
      for (const auto& w : language(sft, s_n)) out << w << "\n";
    } else if (sent->parsed()) {
      Sft1D sft = sft_from_flags(s_alphabet, s_forbid, s_file);
      out << std::fixed << std::setprecision(9) << entropy(sft) << "\n";
    } else if (srep->parsed()) {
      Sft1D sft = sft_from_flags(s_alphabet, s_forbid, s_file);
      auto rep = ztcpe_report(sft, s_nmax, s_radius);
      out << rep.str();
      return rep.pass ? 0 : 1;
    } else if (sgraph->parsed()) {
      Sft1D sft = sft_from_flags(s_alphabet, s_forbid, s_file);
      std::int64_t radius = s_radius > 0 ? s_radius : s_n + 2 * sft.type_t + 4;
      ChainGraph cg = chain_graph(sft, s_n, radius);
      emit(s_dot ? cg.to_dot() : cg.to_edge_list(), s_out, out);
    } else if (pflist->parsed()) {
      for (const auto& w : f_forbidden_list(p_alphabet, split(p_forbid, ',')))
        out << w << "\n";
    } else if (ptrans->parsed()) {
      if (!p_project.empty()) {
        out << project_word(Word::parse(p_project)).letters() << "\n";
      } else {
        std::vector<int> gaps;
        for (const auto& g : split(p_gaps, ',')) gaps.push_back(std::stoi(g));
        out << induce_word(Word::parse(p_word), GapPattern(gaps)).letters() << "\n";
      }
    } else if (gval->parsed()) {
      bool ok;
      if (g_rules == "layers") {
        LayeredPattern p = LayeredPattern::from_grids(slurp(g_in));
        ok = validate_pattern(x_rules(), p.pattern());
      } else {
        Pattern2D p = Pattern2D::from_grid(slurp(g_in));
        ok = validate_pattern(g_rules == "xv" ? xv_rules() : xh_rules(), p);
      }
      out << (ok ? "valid" : "invalid") << "\n";
      return ok ? 0 : 1;
    } else if (gfill->parsed()) {
      Sft2D rules = g_rules == "xv" ? xv_rules() : xh_rules();
      Pattern2D partial;
      if (!g_in.empty()) partial = Pattern2D::from_grid(slurp(g_in));
      FillOptions fo;
      fo.seed = g_seed;
      auto filled =
          fill_rectangle(rules, partial, {0, 0, g_width - 1, g_height - 1}, fo);
      if (!filled) {
        err << "no legal completion\n";
        return 1;
      }
      emit(filled->to_grid(), g_out, out);
    } else if (gembed->parsed()) {
      Pattern2D w = Pattern2D::from_grid(slurp(g_in));
      EmbedResult res = embed_homoclinic_xh(w, g_margin);
      emit(res.window.to_grid(), g_out, out);
    } else if (lbuild->parsed()) {
      std::map<std::int64_t, int> frees;
      for (const auto& kv : split(l_free, ',')) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
          throw std::invalid_argument("free rows must look like j=v");
        frees[std::stoll(kv.substr(0, eq))] = std::stoi(kv.substr(eq + 1));
      }
      LayeredPattern w = build_point_window({parse_seq(l_a), parse_seq(l_b)},
                                            parse_rect(l_rect), frees);
      emit(w.to_grids(), l_out, out);
    } else if (lclass->parsed()) {
      auto tags = classify_pair({parse_seq(l_a), parse_seq(l_b)});
      bool first = true;
      for (int t : tags) {
        out << (first ? "" : " ") << t;
        first = false;
      }
      out << "\n";
    } else if (qsup->parsed()) {
      Pattern2D h = Pattern2D::from_grid(slurp(q_h));
      Pattern2D v = Pattern2D::from_grid(slurp(q_v));
      std::map<std::pair<int, int>, char> letters;
      for (const auto& item : split(q_letters, ';')) {
        auto eq = item.find('=');
        auto comma = item.find(',');
        if (eq == std::string::npos || comma == std::string::npos || comma > eq)
          throw std::invalid_argument("letters must look like i,j=c");
        letters[{std::stoi(item.substr(0, comma)),
                 std::stoi(item.substr(comma + 1, eq - comma - 1))}] =
            item[item.size() - 1];
      }
      SpacerWindow w = superimpose(h, v, letters);
      if (!validate_spacer_window(w, q_alphabet)) {
        err << "superimposition inconsistent\n";
        return 1;
      }
      emit(w.to_grids(), q_out, out);
    } else if (qmove->parsed()) {
      SpacerWindow w = SpacerWindow::from_grids(slurp(q_in));
      MeanderMove mv{q_axis == "h", q_sign, parse_rect(q_region)};
      SpacerWindow moved = meander_move(w, mv, q_alphabet);
      emit(moved.to_grids(), q_out, out);
    } else if (echain->parsed()) {
      ExperimentSpec spec;
      spec.instance = e_instance;
      spec.n_max = e_nmax;
      spec.radius = e_radius;
      spec.seed = e_seed;
      auto res = experiment_chain_diameter(spec);
      emit(res.csv, e_out, out);
      if (!res.all_connected) {
        err << "chain graph disconnected\n";
        return 1;
      }
    } else if (eslope->parsed()) {
      ExperimentSpec spec;
      spec.seed = e_seed;
      auto res = experiment_slope_map(spec);
      emit(res.csv, e_out, out);
      if (!res.all_contain_generator || !res.widths_monotone) {
        err << "slope map assertion failed\n";
        return 1;
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace shiftlab
