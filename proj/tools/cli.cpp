#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "stallings/errors.hpp"
#include "stallings/graph.hpp"
#include "stallings/graph_io.hpp"
#include "stallings/local_global.hpp"
#include "stallings/quotient.hpp"
#include "stallings/text.hpp"

namespace stallings::cli {
namespace {

using nlohmann::json;

constexpr int kUsage = 2;
constexpr int kGuard = 3;

struct Output {
  bool json = false;
  bool dot = false;
  std::string out_file;
};

void add_output_flags(CLI::App* cmd, Output& o, bool dot) {
  cmd->add_flag("--json", o.json, "Machine-readable output");
  if (dot) cmd->add_flag("--dot", o.dot, "Graphviz output");
  cmd->add_option("--out", o.out_file, "Write output to a file instead of stdout");
}

std::string braces(const std::vector<Word>& words) {
  std::string s = "{";
  for (std::size_t i = 0; i < words.size(); ++i) s += (i ? ", " : "") + format_word(words[i]);
  return s + "}";
}

json word_array(const std::vector<Word>& words) {
  json a = json::array();
  for (const Word& w : words) a.push_back(format_word(w));
  return a;
}

/// Rank implied by a word or a comma-separated list of words.
int text_rank(std::string_view text) {
  const auto words = parse_word_list(text);
  return words.empty() ? 1 : words.front().rank();
}

/// The --rank value, or the largest generator mentioned across all inputs.
int resolve_rank(std::optional<int> rank, std::initializer_list<std::string_view> texts) {
  if (rank) {
    if (*rank < 1) throw MalformedInput("--rank must be at least 1");
    return *rank;
  }
  int r = 1;
  for (std::string_view t : texts) r = std::max(r, text_rank(t));
  return r;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json graph_json(const StallingsGraph& g) {
  json edges = json::array();
  for (const Edge& e : g.edges()) {
    edges.push_back({e.source, e.target, format_letter(Letter(e.label, 1), g.alphabet())});
  }
  return {{"rank", g.alphabet().rank()},
          {"vertices", g.num_vertices()},
          {"basepoint", g.basepoint()},
          {"edges", edges},
          {"subgroup_rank", g.subgroup_rank()}};
}

std::string graph_text(const StallingsGraph& g) {
  std::ostringstream s;
  s << "rank " << g.alphabet().rank() << "\nvertices " << g.num_vertices() << "\nbase 0\n";
  for (const Edge& e : g.edges()) {
    s << "edge " << e.source << ' ' << e.target << ' ' << format_letter(Letter(e.label, 1), g.alphabet()) << '\n';
  }
  return s.str();
}

/// Subgroup given either by --gens or by a --graph fixture file.
struct GraphInput {
  std::string gens;
  std::string graph_file;
  std::optional<int> rank;

  void add(CLI::App* cmd) {
    auto* g = cmd->add_option("--gens", gens, "Generators, comma separated (e.g. \"xy,xyy,y\")");
    auto* f = cmd->add_option("--graph", graph_file, "Edge-list graph file");
    g->excludes(f);
    cmd->add_option("--rank", rank, "Number of generators of the free group");
  }

  StallingsGraph load(std::initializer_list<std::string_view> extra = {}) const {
    if (!graph_file.empty()) {
      const LabeledGraph lg = parse_graph(read_file(graph_file));
      if (rank && *rank != lg.alphabet().rank()) throw AlphabetMismatch("--rank differs from the graph file");
      return fold(lg);
    }
    if (gens.empty()) throw MalformedInput("one of --gens or --graph is required");
    int r = resolve_rank(rank, {gens});
    for (std::string_view t : extra) r = rank ? r : std::max(r, text_rank(t));
    return graph_from_generators(Alphabet(r), parse_word_list(gens, r));
  }
};

std::vector<Perm> parse_images(const std::vector<std::string>& images, std::optional<int> degree) {
  int d = degree.value_or(1);
  if (!degree) {
    for (const auto& t : images) d = std::max(d, parse_cycles(t).degree());
  }
  std::vector<Perm> out;
  for (const auto& t : images) out.push_back(parse_cycles(t, d));
  return out;
}

std::string hom_text(const FiniteQuotientHom& h) {
  std::string s;
  for (int i = 1; i <= h.rank(); ++i) {
    if (i > 1) s += ", ";
    s += format_letter(Letter(i, 1), h.alphabet()) + " -> " +
         format_cycles(h.gens()[static_cast<std::size_t>(i - 1)]);
  }
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stallings graphs, free-group words and finite-quotient equation search", "stallings-cli"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  Output o;
  std::function<int(std::ostream&)> action;
  auto bind = [&](CLI::App* cmd, std::function<int(std::ostream&)> f) {
    cmd->callback([&action, f] { action = f; });
  };

  // reduce
  std::string word;
  std::optional<int> rank;
  bool cyclic = false;
  auto* reduce = app.add_subcommand("reduce", "Freely reduce a word");
  reduce->add_option("--word", word, "Word, e.g. xyYX")->required();
  reduce->add_option("--rank", rank, "Number of generators");
  reduce->add_flag("--cyclic", cyclic, "Also print the cyclic reduction u c u^-1");
  add_output_flags(reduce, o, false);
  bind(reduce, [&](std::ostream& os) {
    const Word w = parse_word(word, resolve_rank(rank, {word}));
    const CyclicReduction c = cyclic_reduce(w);
    if (o.json) {
      json j{{"input", word}, {"reduced", format_word(w)}, {"length", w.length()}};
      if (cyclic) j["cyclic"] = {{"core", format_word(c.core)}, {"conjugator", format_word(c.conjugator)}};
      os << j.dump(2) << '\n';
    } else {
      os << format_word(w) << '\n';
      if (cyclic) os << "core " << format_word(c.core) << "\nconjugator " << format_word(c.conjugator) << '\n';
    }
    return 0;
  });

  // root
  int m = 2;
  auto* root = app.add_subcommand("root", "m-th root of a word, if it exists (exit 1 if not)");
  root->add_option("--word", word, "Word")->required();
  root->add_option("--m", m, "Exponent")->required();
  root->add_option("--rank", rank, "Number of generators");
  add_output_flags(root, o, false);
  bind(root, [&](std::ostream& os) {
    const Word g = parse_word(word, resolve_rank(rank, {word}));
    const auto h = mth_root(g, m);
    if (o.json) {
      os << json{{"g", format_word(g)}, {"m", m}, {"root", h ? json(format_word(*h)) : json(nullptr)}}.dump(2)
         << '\n';
    } else {
      os << (h ? format_word(*h) : "none") << '\n';
    }
    return h ? 0 : 1;
  });

  // fold
  GraphInput fold_in;
  auto* fold_cmd = app.add_subcommand("fold", "Stallings graph of a subgroup or of a graph file");
  fold_in.add(fold_cmd);
  add_output_flags(fold_cmd, o, true);
  bind(fold_cmd, [&](std::ostream& os) {
    const StallingsGraph g = fold_in.load();
    if (o.dot) {
      os << to_dot(g);
    } else if (o.json) {
      os << graph_json(g).dump(2) << '\n';
    } else {
      os << graph_text(g);
    }
    return 0;
  });

  // basis
  GraphInput basis_in;
  auto* basis = app.add_subcommand("basis", "Free basis from a spanning tree of the Stallings graph");
  basis_in.add(basis);
  add_output_flags(basis, o, false);
  bind(basis, [&](std::ostream& os) {
    const StallingsGraph g = basis_in.load();
    const auto b = spanning_tree_basis(g);
    if (o.json) {
      os << json{{"basis", word_array(b.words())}, {"rank", g.subgroup_rank()}, {"tree_edges", b.tree}}.dump(2)
         << '\n';
    } else {
      os << "basis " << braces(b.words()) << "\nrank " << g.subgroup_rank() << '\n';
    }
    return 0;
  });

  // member
  GraphInput member_in;
  auto* member = app.add_subcommand("member", "Subgroup membership (exit 1 if not a member)");
  member_in.add(member);
  member->add_option("--word", word, "Word to test")->required();
  add_output_flags(member, o, false);
  bind(member, [&](std::ostream& os) {
    const StallingsGraph g = member_in.load({word});
    const Word w = parse_word(word, g.alphabet().rank());
    const bool in = membership(g, w);
    if (o.json) {
      os << json{{"word", format_word(w)}, {"member", in}}.dump(2) << '\n';
    } else {
      os << format_word(w) << (in ? " is in the subgroup" : " is not in the subgroup") << '\n';
    }
    return in ? 0 : 1;
  });

  // factor
  std::string h_gens;
  std::string n_gens;
  std::string s_words;
  std::vector<std::string> family;
  auto* factor = app.add_subcommand(
      "factor", "Free-factor certificate for H <= N (--h/--n), or the directed-family factor (--s/--family)");
  auto* opt_h = factor->add_option("--h", h_gens, "Generators of H");
  auto* opt_n = factor->add_option("--n", n_gens, "Generators of N");
  auto* opt_s = factor->add_option("--s", s_words, "Finite set S lying in every family member");
  auto* opt_f = factor->add_option("--family", family, "Generators of one family member (repeatable)");
  opt_h->needs(opt_n);
  opt_n->needs(opt_h);
  opt_s->needs(opt_f);
  opt_f->needs(opt_s);
  opt_h->excludes(opt_s);
  factor->add_option("--rank", rank, "Number of generators");
  add_output_flags(factor, o, false);
  bind(factor, [&](std::ostream& os) {
    if (!h_gens.empty()) {
      const int r = resolve_rank(rank, {h_gens, n_gens});
      const StallingsGraph h = graph_from_generators(Alphabet(r), parse_word_list(h_gens, r));
      const StallingsGraph n = graph_from_generators(Alphabet(r), parse_word_list(n_gens, r));
      const auto cert = free_factor_certificate(h, n);
      if (o.json) {
        json j{{"certified", cert.has_value()}};
        if (cert) j.update({{"basis_h", word_array(cert->basis_h)}, {"basis_n", word_array(cert->basis_n)}});
        os << j.dump(2) << '\n';
      } else if (cert) {
        os << "free factor certified\nbasis_h " << braces(cert->basis_h) << "\nbasis_n " << braces(cert->basis_n)
           << '\n';
      } else {
        os << "no certificate: H is not contained in N or the morphism is not injective\n";
      }
      return cert ? 0 : 1;
    }
    if (s_words.empty()) throw MalformedInput("factor needs --h/--n or --s/--family");
    int r = resolve_rank(rank, {s_words});
    if (!rank) {
      for (const auto& f : family) r = std::max(r, text_rank(f));
    }
    const auto s = parse_word_list(s_words, r);
    std::vector<StallingsGraph> members;
    for (const auto& f : family) members.push_back(graph_from_generators(Alphabet(r), parse_word_list(f, r)));
    const DirectedFactor d = directed_family_factor(s, members);
    const auto h_basis = spanning_tree_basis(d.subgroup).words();
    const auto n_basis = spanning_tree_basis(d.intersection).words();
    if (o.json) {
      os << json{{"h_basis", word_array(h_basis)},
                 {"h_rank", d.subgroup.subgroup_rank()},
                 {"intersection_basis", word_array(n_basis)},
                 {"j0", d.j0},
                 {"j0_members", d.j0_members},
                 {"certificate",
                  {{"basis_h", word_array(d.certificate.basis_h)}, {"basis_n", word_array(d.certificate.basis_n)}}}}
                .dump(2)
         << '\n';
    } else {
      std::string members_text;
      for (std::size_t b : d.j0_members) members_text += (members_text.empty() ? "" : ",") + std::to_string(b);
      os << "H " << braces(h_basis) << "\nrank " << d.subgroup.subgroup_rank() << "\nN " << braces(n_basis)
         << "\nj0 " << d.j0 << " (members " << members_text << ")\nbasis_h " << braces(d.certificate.basis_h)
         << "\nbasis_n " << braces(d.certificate.basis_n) << '\n';
    }
    return 0;
  });

  // intersect
  std::string a_gens;
  std::string b_gens;
  auto* inter = app.add_subcommand("intersect", "Intersection of two subgroups");
  inter->add_option("--a", a_gens, "Generators of A")->required();
  inter->add_option("--b", b_gens, "Generators of B")->required();
  inter->add_option("--rank", rank, "Number of generators");
  add_output_flags(inter, o, true);
  bind(inter, [&](std::ostream& os) {
    const int r = resolve_rank(rank, {a_gens, b_gens});
    const StallingsGraph g = intersect(graph_from_generators(Alphabet(r), parse_word_list(a_gens, r)),
                                       graph_from_generators(Alphabet(r), parse_word_list(b_gens, r)));
    const auto b = spanning_tree_basis(g).words();
    if (o.dot) {
      os << to_dot(g);
    } else if (o.json) {
      json j = graph_json(g);
      j["basis"] = word_array(b);
      os << j.dump(2) << '\n';
    } else {
      os << "basis " << braces(b) << "\nrank " << g.subgroup_rank() << '\n';
    }
    return 0;
  });

  // solve-quotient
  std::string equation;
  std::vector<std::string> images;
  std::optional<int> degree;
  auto* solve = app.add_subcommand("solve-quotient", "Solve an equation in the image of F_k -> Sym(d)");
  solve->add_option("--equation", equation, "Equation, e.g. v1v1X for x1^2 x^-1")->required();
  solve->add_option("--image", images, "Image of x_i in cycle notation, one per generator (repeatable)")
      ->required();
  solve->add_option("--degree", degree, "Permutation degree (default: largest point)");
  add_output_flags(solve, o, false);
  bind(solve, [&](std::ostream& os) {
    const QuotientLimits limits = QuotientLimits::from_environment();
    const int r = static_cast<int>(images.size());
    const Equation psi = parse_equation(equation, r);
    auto gens = parse_images(images, degree);
    const int d = gens.front().degree();
    const FiniteQuotientHom h(Alphabet(r), d, std::move(gens), limits);
    const auto sol = solve_in_quotient(psi, h, limits);
    if (o.json) {
      os << quotient_report_json(h, sol).dump(2) << '\n';
    } else if (sol) {
      os << "solvable";
      for (std::size_t i = 0; i < sol->assignment.size(); ++i) {
        os << (i ? ", " : " ") << 'v' << i + 1 << " -> " << format_cycles(sol->assignment[i]);
      }
      os << '\n';
    } else {
      os << "unsolvable in the image (order " << h.image().size() << ")\n";
    }
    return sol ? 0 : 1;
  });

  // sweep
  int max_degree = 6;
  int jobs = 1;
  auto* sweep_cmd = app.add_subcommand("sweep", "Solvability of an equation in every hom up to a degree");
  sweep_cmd->add_option("--equation", equation, "Equation")->required();
  sweep_cmd->add_option("--max-degree", max_degree, "Largest permutation degree")->capture_default_str();
  sweep_cmd->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
  sweep_cmd->add_option("--rank", rank, "Number of generators");
  add_output_flags(sweep_cmd, o, false);
  bind(sweep_cmd, [&](std::ostream& os) {
    QuotientLimits limits = QuotientLimits::from_environment();
    if (max_degree > limits.max_degree) {
      throw GuardViolation("max degree " + std::to_string(max_degree) + " exceeds the limit " +
                           std::to_string(limits.max_degree));
    }
    const Equation psi = parse_equation(equation, rank);
    const auto rows = sweep(psi, max_degree, jobs, limits);
    if (o.json) {
      json a = json::array();
      for (const auto& s : rows) {
        a.push_back({{"degree", s.degree},
                     {"homs", s.homs},
                     {"solvable", s.solvable},
                     {"first_unsolvable", s.first_unsolvable ? json(*s.first_unsolvable) : json(nullptr)}});
      }
      os << json{{"equation", format_equation(psi)}, {"degrees", a}}.dump(2) << '\n';
    } else {
      for (const auto& s : rows) {
        os << "degree " << s.degree << ": " << s.solvable << "/" << s.homs << " solvable";
        if (s.first_unsolvable) os << ", first unsolvable hom #" << *s.first_unsolvable;
        os << '\n';
      }
    }
    return 0;
  });

  // local-global
  std::string g_word;
  bool audit = false;
  std::optional<int> audit_degree;
  auto* lg = app.add_subcommand("local-global", "Decide x^m = g globally and search for a witness quotient");
  lg->add_option("--g", g_word, "The word g")->required();
  lg->add_option("--m", m, "Exponent")->required();
  lg->add_option("--max-degree", max_degree, "Largest permutation degree")->capture_default_str();
  lg->add_flag("--audit", audit, "With a global root, also check every quotient");
  lg->add_option("--audit-degree", audit_degree, "Largest degree for --audit (default: --max-degree)");
  lg->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
  lg->add_option("--rank", rank, "Number of generators");
  add_output_flags(lg, o, false);
  bind(lg, [&](std::ostream& os) {
    LocalGlobalOptions opts;
    opts.limits = QuotientLimits::from_environment();
    opts.max_degree = max_degree;
    opts.audit = audit;
    opts.audit_degree = audit_degree;
    opts.jobs = jobs;
    const Word g = parse_word(g_word, resolve_rank(rank, {g_word}));
    const WitnessReport r = local_global_mpower_check(g, m, opts);
    if (o.json) {
      os << to_json(r).dump(2) << '\n';
    } else {
      os << to_string(r.mode);
      if (r.root) os << ": x1 -> " << format_word(*r.root);
      if (r.failure) os << " at degree " << r.failure->degree << ": " << hom_text(r.failure->hom);
      if (r.mode == WitnessMode::exhausted) {
        os << ": no witness quotient up to degree " << r.max_degree << " (not a claim of local solvability)";
      }
      os << '\n';
      if (r.audit) {
        os << "audit: " << r.audit->homs_checked << " homs up to degree " << r.audit->degree << ", "
           << r.audit->failures << " failures\n";
      }
      os << "homs tested " << r.homs_tested << '\n';
    }
    return exit_code(r);
  });

  // reduce-pipeline
  std::string solution;
  auto* pipe = app.add_subcommand("reduce-pipeline", "Finite-scale rank reduction for S = {g}");
  pipe->add_option("--g", g_word, "The word g")->required();
  pipe->add_option("--solution", solution, "Solution subgroup generators (n of them)")->required();
  pipe->add_option("--family", family, "Generators of one family member (repeatable)")->required();
  pipe->add_option("--rank", rank, "Number of generators");
  add_output_flags(pipe, o, false);
  bind(pipe, [&](std::ostream& os) {
    int r = resolve_rank(rank, {g_word, solution});
    if (!rank) {
      for (const auto& f : family) r = std::max(r, text_rank(f));
    }
    std::vector<StallingsGraph> members;
    for (const auto& f : family) members.push_back(graph_from_generators(Alphabet(r), parse_word_list(f, r)));
    const auto sol = parse_word_list(solution, r);
    const ReductionReport rep = reduction_pipeline(parse_word(g_word, r), sol, members);
    if (o.json) {
      os << to_json(rep).dump(2) << '\n';
    } else {
      os << "H0 " << braces(rep.basis_h0) << "\nrank(H0) " << rep.rank_h0 << ", n " << rep.n
         << (rep.rank_within_bound ? " (within bound)" : " (exceeds bound)") << '\n';
      for (const ProofStep& s : rep.steps) {
        os << (s.machine_checked ? "[checked] " : "[not machine-checked] ") << s.name << ": " << s.detail << '\n';
      }
    }
    return 0;
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (o.out_file.empty()) return action(out);
    std::ostringstream buffer;
    const int code = action(buffer);
    std::ofstream file(o.out_file);
    if (!file) throw MalformedInput("cannot write " + o.out_file);
    file << buffer.str();
    return code;
  } catch (const GuardViolation& e) {
    err << "guard violation: " << e.what() << '\n';
    return kGuard;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace stallings::cli
