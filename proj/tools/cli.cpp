#include "grpd/cli.hpp"

#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "grpd/certificate.hpp"
#include "grpd/construct.hpp"
#include "grpd/descent.hpp"
#include "grpd/io.hpp"
#include "grpd/presentation.hpp"

namespace grpd::cli {

namespace {

struct Options {
  std::vector<std::string> inputs;
  std::string out_path;
  std::uint64_t seed = 1;
  std::size_t max_size = 1'000'000;
  std::size_t samples = 64;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string sizes(const FiniteGroupoid& g) {
  return std::to_string(g.num_objects()) + " objects, " + std::to_string(g.num_arrows()) + " arrows";
}

std::string join_sizes(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t x : v) out += (out.empty() ? "" : " ") + std::to_string(x);
  return out;
}

void write_out(const Options& o, const std::string& text) {
  if (o.out_path.empty()) return;
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) throw InputError("cannot write " + o.out_path);
  f << text;
}

const std::string& first(const std::vector<std::string>& order, const std::string& what, const std::string& file) {
  if (order.empty()) throw InputError(file + ": no " + what + " found");
  return order.front();
}

int report_validation(std::ostream& out, const std::string& what, const ValidationReport& r, int& status) {
  out << what << ": " << (r.ok() ? "valid" : "INVALID") << "\n";
  if (!r.ok()) {
    out << r.to_string();
    status = std::max(status, r.structural.empty() ? kNegative : kInputError);
  }
  return status;
}

int cmd_validate(const Options& o, std::ostream& out) {
  int status = kOk;
  for (const auto& path : o.inputs) {
    const io::Library lib = io::load_file(path);
    out << "file " << path << "\n";
    for (const auto& name : lib.groupoid_order) {
      const ChartedGroupoid& g = lib.groupoids.at(name);
      const ValidationReport r = lib.has_charts.at(name) ? validate_charted(g) : validate_groupoid(*g.base);
      report_validation(out, "  groupoid " + name + " (" + sizes(*g.base) + ")", r, status);
    }
    for (const auto& name : lib.group_order)
      out << "  group " << name << " (order " << lib.groups.at(name).order() << "): valid\n";
    for (const auto& name : lib.set_action_order)
      report_validation(out, "  action " + name, validate_action(lib.set_actions.at(name)), status);
    for (const auto& name : lib.groupoid_action_order)
      report_validation(out, "  action " + name, validate_action(lib.groupoid_actions.at(name)), status);
    for (const auto& name : lib.bibundle_order) {
      const Bibundle& p = lib.bibundles.at(name);
      report_validation(out, "  bibundle " + name + " (" + std::to_string(p.size) + " elements)",
                        validate_bibundle(p), status);
    }
    for (const auto& name : lib.cover_order)
      report_validation(out, "  cover " + name, validate_cover(lib.covers.at(name)), status);
    for (const auto& name : lib.descent_order)
      report_validation(out, "  descent datum " + name, validate_descent(lib.descents.at(name)), status);
  }
  return status;
}

ChartedGroupoid first_groupoid(const std::string& path) {
  const io::Library lib = io::load_file(path);
  return lib.groupoids.at(first(lib.groupoid_order, "groupoid", path));
}

ChartedGroupoid checked_groupoid(const std::string& path) {
  ChartedGroupoid g = first_groupoid(path);
  const ValidationReport r = validate_charted(g);
  if (!r.ok()) throw InputError(path + ": invalid groupoid\n" + r.to_string());
  return g;
}

int cmd_effectivize(const Options& o, std::ostream& out) {
  const ChartedGroupoid g = checked_groupoid(o.inputs.at(0));
  const Effectivization e = effectivization(g);
  out << "G: " << sizes(*g.base) << "\n";
  out << "G_eff: " << sizes(*e.result.base) << "\n";
  out << "purely ineffective: " << (is_purely_ineffective(g) ? "yes" : "no") << "\n";
  out << "effective: " << (is_effective(g) ? "yes" : "no") << "\n";
  out << "G_eff effective: " << (is_effective(e.result) ? "yes" : "no") << "\n";
  std::ostringstream text;
  io::write_charted(text, e.result, "G_eff");
  write_out(o, text.str());
  return kOk;
}

int cmd_frames(const Options& o, std::ostream& out) {
  const ChartedGroupoid g = checked_groupoid(o.inputs.at(0));
  const FrameConstruction f = frame_construction(g, Limits{o.max_size});
  out << "G: " << sizes(*g.base) << ", chart size " << g.n << "\n";
  out << "G ⋉ F: " << sizes(*f.frames.base) << "\n";
  out << f.transcript.to_string();
  std::ostringstream text;
  io::write_charted(text, f.frames, "frames");
  write_out(o, text.str());
  return f.ok() ? kOk : kNegative;
}

int cmd_band(const Options& o, std::ostream& out) {
  const ChartedGroupoid g = checked_groupoid(o.inputs.at(0));
  const BandTrivialization b = band_trivialization(g, std::nullopt, Limits{o.max_size});
  out << "G: " << sizes(*g.base) << "\n";
  out << "T: order " << b.band.group.order() << ", Z(T): order " << b.center.size() << ", Aut(T): order "
      << b.aut.order() << "\n";
  out << "G': " << sizes(*b.g_prime.base) << "\n";
  out << b.transcript.to_string();
  std::ostringstream text;
  io::write_charted(text, b.g_prime, "G_prime");
  write_out(o, text.str());
  return b.ok() ? kOk : kNegative;
}

int cmd_present(const Options& o, std::ostream& out) {
  const ChartedGroupoid g = checked_groupoid(o.inputs.at(0));
  const Limits limits{o.max_size};
  const PresentationCertificate c = present(g, limits);
  out << "G: " << sizes(*g.base) << ", chart size " << g.n << "\n";
  out << "stage reached: " << c.stage << "\n";
  if (c.complete()) {
    out << "H: " << sizes(*c.presented->base) << "\n";
    out << "T: order " << c.band.order() << ", Z(T): order " << c.center.order() << "\n";
    out << "K = Sym(" << c.n << ") x Aut(T): order " << c.k.order() << "\n";
    out << "H ⋊ K: " << sizes(*c.quotient) << "\n";
  }
  out << c.transcript.to_string();
  if (c.complete() && c.center.order() == 1) {
    const TrivialCenterPresentation tc = present_trivial_center(g, limits);
    out << "set presentation: |P| = " << tc.p_action.carrier << "\n";
    out << tc.transcript.to_string();
    if (!tc.ok()) {
      write_out(o, cert::certificate_text(c));
      return kNegative;
    }
  }
  write_out(o, cert::certificate_text(c));
  return c.ok() ? kOk : kNegative;
}

int cmd_equiv(const Options& o, std::ostream& out) {
  if (o.inputs.size() != 2) throw InputError("equiv takes two groupoid files");
  const ChartedGroupoid a = checked_groupoid(o.inputs[0]);
  const ChartedGroupoid b = checked_groupoid(o.inputs[1]);
  const WeakEquivalenceReport r = decide_weak_equivalence(a.base, b.base);
  out << "G: " << r.classes_g << " classes, stabilizer orders " << join_sizes(r.stabilizer_orders_g) << "\n";
  out << "H: " << r.classes_h << " classes, stabilizer orders " << join_sizes(r.stabilizer_orders_h) << "\n";
  if (!r.equivalent) {
    out << "not equivalent: " << r.reason << "\n";
    return kNegative;
  }
  out << "equivalent" << (r.witness_verified ? " (witness bibundle verified)" : " (witness FAILED)") << "\n";
  if (r.witness) {
    std::ostringstream text;
    io::write_groupoid(text, *a.base, "G");
    text << "\n";
    io::write_groupoid(text, *b.base, "H");
    text << "\n";
    io::write_bibundle(text, *r.witness, "witness", "G", "H");
    write_out(o, text.str());
  }
  return r.witness_verified ? kOk : kNegative;
}

int cmd_compose(const Options& o, std::ostream& out) {
  const std::string& path = o.inputs.at(0);
  const io::Library lib = io::load_file(path);
  if (lib.bibundle_order.size() < 2) throw InputError(path + ": compose needs two bibundles");
  const Bibundle& p = lib.bibundles.at(lib.bibundle_order[0]);
  const Bibundle& q = lib.bibundles.at(lib.bibundle_order[1]);
  for (const Bibundle* b : {&p, &q})
    if (const ValidationReport r = validate_bibundle(*b); !r.ok())
      throw InputError(path + ": invalid bibundle\n" + r.to_string());
  const Bibundle pq = compose(p, q);
  const ValidationReport r = validate_bibundle(pq);
  out << "P: " << p.size << " elements, Q: " << q.size << " elements\n";
  out << "P ∘ Q: " << pq.size << " elements, " << (r.ok() ? "valid" : "INVALID") << "\n";
  if (!r.ok()) out << r.to_string();
  const EquivalenceCheck eq = is_equivalence(pq);
  out << "equivalence: " << (eq.ok() ? "yes" : "no") << "\n";
  std::string src, tgt;
  for (const auto& [name, g] : lib.groupoids) {
    if (*g.base == *pq.source && src.empty()) src = name;
    if (*g.base == *pq.target && tgt.empty()) tgt = name;
  }
  std::ostringstream text;
  io::write_bibundle(text, pq, "composite", src, tgt);
  write_out(o, text.str());
  return r.ok() ? kOk : kNegative;
}

int cmd_glue(const Options& o, std::ostream& out) {
  const std::string& path = o.inputs.at(0);
  const io::Library lib = io::load_file(path);
  const std::string& name = first(lib.descent_order, "descent datum", path);
  const DescentDatum& d = lib.descents.at(name);
  const ValidationReport r = validate_descent(d);
  out << "descent datum " << name << ": " << d.cover.points << " points, " << d.cover.size() << " parts\n";
  if (!r.ok()) {
    out << "invalid descent datum\n" << r.to_string();
    return r.structural.empty() ? kNegative : kInputError;
  }
  const GluedBundle g = glue(d);
  const ValidationReport vb = validate_bibundle(g.bundle);
  out << "glued bibundle: " << g.bundle.size << " elements, " << (vb.ok() ? "valid" : "INVALID") << "\n";
  const bool round = find_descent_iso(restrict(g.bundle, d.cover), d).has_value();
  out << "restrict(glue(D)) isomorphic to D: " << (round ? "yes" : "no") << "\n";
  std::ostringstream text;
  io::write_groupoid(text, *g.bundle.source, "M");
  text << "\n";
  io::write_groupoid(text, *d.target, "target");
  text << "\n";
  io::write_bibundle(text, g.bundle, "glued", "M", "target");
  write_out(o, text.str());
  return vb.ok() && round ? kOk : kNegative;
}

int cmd_stackcheck(const Options& o, std::ostream& out) {
  io::Library lib;
  for (const auto& path : o.inputs) io::load_into(lib, io::read_file(path));
  const std::string& cname = first(lib.cover_order, "cover", o.inputs.at(0));
  const std::string& gname = first(lib.groupoid_order, "groupoid", o.inputs.at(0));
  const GroupoidPtr g = lib.groupoids.at(gname).base;
  if (const ValidationReport r = validate_groupoid(*g); !r.ok())
    throw InputError("invalid groupoid " + gname + "\n" + r.to_string());
  StackOptions so;
  so.seed = o.seed;
  so.samples = o.samples;
  const StackReport r = check_stack_property(lib.covers.at(cname), g, so);
  out << "cover " << cname << ", target " << gname << " (" << sizes(*g) << ")\n";
  out << r.to_string() << "\n";
  return r.ok() ? kOk : kNegative;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const Transcript t = cert::verify_file(o.inputs.at(0));
  out << t.to_string();
  out << (t.ok() ? "certificate verified\n" : "certificate REJECTED: " + t.first_failure() + "\n");
  return t.ok() ? kOk : kNegative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite groupoid calculus: presentations, bibundles and descent"};
  app.require_subcommand(1);
  Options o;
  std::function<int(const Options&, std::ostream&)> action;

  auto add = [&](const std::string& name, const std::string& help, const std::string& inputs, int count,
                 std::function<int(const Options&, std::ostream&)> fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option(inputs, o.inputs, "input file(s)")->required()->expected(count < 0 ? 1 : count, count < 0 ? -1 : count);
    sub->add_option("--out", o.out_path, "write the result here");
    sub->add_option("--max-size", o.max_size, "reject derived constructions larger than this")
        ->capture_default_str();
    sub->callback([&action, fn] { action = fn; });
    return sub;
  };
  add("validate", "check the axioms of every block in the files", "files", -1, cmd_validate);
  add("effectivize", "quotient by ineffective arrows", "file", 1, cmd_effectivize);
  add("frames", "frame construction and its certificate", "file", 1, cmd_frames);
  add("band", "band trivialization of a purely ineffective groupoid", "file", 1, cmd_band);
  add("present", "full presentation; --out writes a CERT v1 file", "file", 1, cmd_present);
  add("equiv", "decide weak equivalence of two groupoids", "files", 2, cmd_equiv);
  add("compose", "compose the first two bibundles of a file", "file", 1, cmd_compose);
  add("glue", "glue the first descent datum of a file", "file", 1, cmd_glue);
  CLI::App* stack = add("stackcheck", "check descent for a cover and a groupoid", "files", -1, cmd_stackcheck);
  stack->add_option("--seed", o.seed, "sampler seed")->capture_default_str();
  stack->add_option("--samples", o.samples, "data sampled beyond the exhaustive bounds")->capture_default_str();
  add("verify", "recheck a CERT v1 file from its tables", "file", 1, cmd_verify);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }
  try {
    return action(o, out);
  } catch (const io::ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
  } catch (const LimitExceeded& e) {
    err << "limit exceeded: " << e.what() << "\n";
  } catch (const StructuralError& e) {
    err << "structural error: " << e.what() << "\n";
  } catch (const Refusal& e) {
    out << "refused: " << e.what() << "\n";
    return kNegative;
  } catch (const std::out_of_range& e) {
    err << "input error: missing argument\n";
  }
  return kInputError;
}

}  // namespace grpd::cli
