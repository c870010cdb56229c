// qdq: generate, solve, verify and transform minimal dequantizer/quantizer
// sets, and compute operator symbols and star products over them.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "qdq/duality.hpp"
#include "qdq/errors.hpp"
#include "qdq/io.hpp"
#include "qdq/selfdual.hpp"
#include "qdq/symbols.hpp"
#include "qdq/tensorext.hpp"
#include "qdq/transforms.hpp"

namespace {

using namespace qdq;

// Exit codes shared with the end-to-end tests.
enum ExitCode {
  kOk = 0,
  kVerifyFail = 1,
  kInfeasible = 2,
  kSingular = 3,
  kMalformed = 4,
  kDimensionMismatch = 5,
  kReferenceSet = 6,
};

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path);
  if (!in) {
    throw MalformedDocumentError("cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) {
    throw MalformedDocumentError("cannot open '" + path + "' for writing");
  }
  out << text;
}

bool is_preset_name(const std::string& ref) {
  for (const std::string& name : preset_names()) {
    if (name == ref) {
      return true;
    }
  }
  return false;
}

// Document-valued flags accept a preset name, "-" for stdin, or a path.
io::SetDocument load_set_document(const std::string& ref) {
  if (is_preset_name(ref)) {
    return io::from_operator_set(preset(ref));
  }
  return io::parse_set_document(read_input(ref));
}

OperatorSet load_operator_set(const std::string& ref) {
  return io::to_operator_set(load_set_document(ref));
}

DualPair load_dual_pair(const std::string& ref, double eps) {
  if (is_preset_name(ref)) {
    return solve_quantizers(preset(ref), Tolerance{eps, 1e-12});
  }
  const io::SetDocument doc = io::parse_set_document(read_input(ref));
  if (doc.kind != "pair") {
    throw MalformedDocumentError("expected a pair document, got kind '" + doc.kind + "'");
  }
  return io::to_dual_pair(doc, eps);
}

int parse_sign(char ch, const char* field) {
  if (ch == '+') return +1;
  if (ch == '-') return -1;
  throw InfeasibleParamsError(field, "signs must use only '+' and '-'");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct GenOptions {
  std::string preset_name;
  int family = 0;
  std::optional<double> b2, c2, b3, c3, b4, c4;
  std::string signs;
  std::string label;
  std::string out;
};

int run_gen(const GenOptions& opt, const Tolerance& tol) {
  if (!opt.preset_name.empty()) {
    io::SetDocument doc = io::from_operator_set(preset(opt.preset_name));
    doc.metadata["preset"] = opt.preset_name;
    if (!opt.label.empty()) {
      doc.metadata["label"] = opt.label;
    }
    write_output(opt.out, io::emit(doc));
    return kOk;
  }

  std::optional<OperatorSet> set;
  std::map<std::string, std::string> provenance;
  if (opt.family == 1) {
    struct Candidate {
      Family1Param name;
      const char* key;
      const std::optional<double>& value;
    };
    const Candidate candidates[] = {
        {Family1Param::B2, "b2", opt.b2}, {Family1Param::C2, "c2", opt.c2},
        {Family1Param::B3, "b3", opt.b3}, {Family1Param::C3, "c3", opt.c3},
        {Family1Param::B4, "b4", opt.b4}, {Family1Param::C4, "c4", opt.c4}};
    std::vector<Family1Assignment> given;
    for (const auto& candidate : candidates) {
      if (candidate.value) {
        given.push_back({candidate.name, *candidate.value});
        provenance[candidate.key] = format_double(*candidate.value);
      }
    }
    int gamma_sign = +1;
    if (!opt.signs.empty()) {
      if (opt.signs.size() != 1) {
        throw InfeasibleParamsError("signs", "family 1 takes a single gamma sign");
      }
      gamma_sign = parse_sign(opt.signs[0], "signs");
      provenance["signs"] = opt.signs;
    }
    if (given.size() == 6) {
      set = family1_build({*opt.b2, *opt.c2, *opt.b3, *opt.c3, *opt.b4, *opt.c4, gamma_sign},
                          tol);
    } else if (given.size() == 3) {
      Family1Params params = family1_solve({given[0], given[1], given[2]});
      params.gamma_sign = gamma_sign;
      set = family1_build(params, tol);
      provenance["solved"] =
          "b2=" + format_double(params.b2) + " c2=" + format_double(params.c2) +
          " b3=" + format_double(params.b3) + " c3=" + format_double(params.c3) +
          " b4=" + format_double(params.b4) + " c4=" + format_double(params.c4);
    } else {
      throw InfeasibleParamsError(
          "params", "family 1 takes exactly six parameters, or three to solve for the rest");
    }
  } else if (opt.family == 2 || opt.family == 3) {
    int s[3] = {+1, +1, +1};
    if (!opt.signs.empty()) {
      if (opt.signs.size() != 3) {
        throw InfeasibleParamsError("signs", "families 2 and 3 take three signs");
      }
      for (int i = 0; i < 3; ++i) {
        s[i] = parse_sign(opt.signs[i], "signs");
      }
      provenance["signs"] = opt.signs;
    }
    if (opt.family == 2) {
      if (!opt.c2 || !opt.c3) {
        throw InfeasibleParamsError("params", "family 2 needs --c2 and --c3");
      }
      provenance["c2"] = format_double(*opt.c2);
      provenance["c3"] = format_double(*opt.c3);
      set = family2_build({*opt.c2, *opt.c3, s[0], s[1], s[2]}, tol);
    } else {
      if (!opt.b3) {
        throw InfeasibleParamsError("params", "family 3 needs --b3");
      }
      provenance["b3"] = format_double(*opt.b3);
      set = family3_build({*opt.b3, s[0], s[1], s[2]}, tol);
    }
  } else {
    throw InfeasibleParamsError("family", "--family must be 1, 2 or 3");
  }

  if (!opt.label.empty()) {
    set->set_label(opt.label);
  }
  io::SetDocument doc = io::from_operator_set(*set);
  doc.metadata["family"] = std::to_string(opt.family);
  doc.metadata.insert(provenance.begin(), provenance.end());
  write_output(opt.out, io::emit(doc));
  return kOk;
}

int run_solve(const std::string& in, const std::string& out, const Tolerance& tol) {
  const io::SetDocument doc = io::parse_set_document(read_input(in));
  if (doc.kind != "dequantizers") {
    throw MalformedDocumentError("solve expects a dequantizers document, got kind '" +
                                 doc.kind + "'");
  }
  const DualPair pair = solve_quantizers(io::to_operator_set(doc), tol);
  io::SetDocument result = io::from_dual_pair(pair);
  result.metadata = doc.metadata;
  write_output(out, io::emit(result));
  return kOk;
}

int run_verify(const std::string& in, const std::string& mode, const Tolerance& tol) {
  const io::SetDocument doc = load_set_document(in);
  std::ostringstream line;
  line.precision(3);
  line << std::scientific;
  bool pass = false;

  if (mode == "duality") {
    if (doc.kind != "pair") {
      throw MalformedDocumentError("duality mode expects a pair document");
    }
    const OperatorSet deq(doc.dim, doc.operators);
    const OperatorSet quant(doc.dim, doc.quantizers);
    const ComplexMatrix g = pairing_matrix(deq, quant);
    const double dev = max_abs_diff(g, ComplexMatrix::identity(g.rows()));
    const Complex det_product =
        determinant(flatten_dequantizers(deq)) * determinant(flatten_quantizers(quant));
    pass = dev <= tol.abs_eps;
    line << "mode=duality dim=" << doc.dim << " max_deviation=" << dev
         << " det_product_deviation=" << std::abs(det_product - Complex{1.0, 0.0})
         << " eps=" << tol.abs_eps;
  } else if (mode == "orthonormal") {
    const SelfDualReport report = validate_selfdual(io::to_operator_set(doc), tol);
    pass = report.max_gram_deviation <= tol.abs_eps;
    line << "mode=orthonormal dim=" << doc.dim
         << " max_deviation=" << report.max_gram_deviation << " eps=" << tol.abs_eps;
  } else if (mode == "hermitian") {
    const SelfDualReport report = validate_selfdual(io::to_operator_set(doc), tol);
    pass = report.max_hermiticity_deviation <= tol.abs_eps;
    line << "mode=hermitian dim=" << doc.dim
         << " max_deviation=" << report.max_hermiticity_deviation << " eps=" << tol.abs_eps;
  } else {
    const MinimalityReport report = check_minimal(io::to_operator_set(doc), tol);
    pass = report.is_minimal;
    line << "mode=minimal dim=" << doc.dim << " abs_det=" << std::abs(report.det_A)
         << " condition_estimate=" << report.condition_estimate;
  }

  line << " result=" << (pass ? "PASS" : "FAIL");
  std::cout << line.str() << "\n";
  return pass ? kOk : kVerifyFail;
}

int run_symbol(const std::string& set_ref, const std::string& op_ref, const std::string& out) {
  const io::SetDocument set_doc = load_set_document(set_ref);
  // A pair document contributes its dequantizers.
  std::string label;
  if (const auto it = set_doc.metadata.find("label"); it != set_doc.metadata.end()) {
    label = it->second;
  }
  const OperatorSet u(set_doc.dim, set_doc.operators, label);
  const io::OperatorDocument op = io::parse_operator_document(read_input(op_ref));
  write_output(out, io::emit(io::from_symbol(symbol_of(op.matrix, u))));
  return kOk;
}

int run_reconstruct(const std::string& set_ref, const std::string& symbol_ref,
                    const std::string& out) {
  const io::SetDocument set_doc = load_set_document(set_ref);
  // A pair document contributes its quantizers; plain sets are used as given.
  const OperatorSet d = set_doc.kind == "pair" ? OperatorSet(set_doc.dim, set_doc.quantizers)
                                               : io::to_operator_set(set_doc);
  const Symbol f = io::to_symbol(io::parse_symbol_document(read_input(symbol_ref)));
  io::OperatorDocument result;
  result.dim = d.dim();
  result.matrix = reconstruct(f, d);
  write_output(out, io::emit(result));
  return kOk;
}

int run_star(const std::string& a_ref, const std::string& b_ref, const std::string& pair_ref,
             const std::string& out, const Tolerance& tol) {
  const DualPair pair = load_dual_pair(pair_ref, tol.abs_eps);
  const io::OperatorDocument a = io::parse_operator_document(read_input(a_ref));
  const io::OperatorDocument b = io::parse_operator_document(read_input(b_ref));
  const StarKernel kernel = build_star_kernel(pair);
  const Symbol fa = symbol_of(a.matrix, pair.dequantizers());
  const Symbol fb = symbol_of(b.matrix, pair.dequantizers());
  write_output(out, io::emit(io::from_symbol(star_apply(fa, fb, kernel))));
  return kOk;
}

int run_transform(const std::string& from_ref, const std::string& to_ref,
                  bool with_quantizer_transform, const std::string& out,
                  const Tolerance& tol) {
  const OperatorSet u = load_operator_set(from_ref);
  const OperatorSet v = load_operator_set(to_ref);
  const TransformMatrix l = find_transform(v, u, tol);
  io::TransformDocument doc;
  doc.dim = u.dim();
  doc.l = l.matrix();
  if (with_quantizer_transform) {
    doc.m = quantizer_transform(l, tol).matrix();
  }
  write_output(out, io::emit(doc));
  return kOk;
}

int run_tensor(const std::string& a_ref, const std::string& b_ref, const std::string& out,
               const Tolerance& tol) {
  const io::SetDocument a = load_set_document(a_ref);
  const io::SetDocument b = load_set_document(b_ref);
  if (a.kind == "pair" && b.kind == "pair") {
    const DualPair pair =
        tensor_pair(io::to_dual_pair(a, tol.abs_eps), io::to_dual_pair(b, tol.abs_eps));
    write_output(out, io::emit(io::from_dual_pair(pair)));
    return kOk;
  }
  if (a.kind == "pair" || b.kind == "pair") {
    throw MalformedDocumentError("tensor needs two sets or two pairs, not a mixture");
  }
  const OperatorSet composite = tensor_sets(io::to_operator_set(a), io::to_operator_set(b));
  write_output(out, io::emit(io::from_operator_set(composite)));
  return kOk;
}

int run_main(int argc, char** argv) {
  Tolerance tol;
  if (const char* env = std::getenv("QDQ_EPS")) {
    char* end = nullptr;
    const double eps = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(eps > 0.0) || !std::isfinite(eps)) {
      std::cerr << "code=MALFORMED msg=\"QDQ_EPS must be a positive decimal\"\n";
      return kMalformed;
    }
    tol.abs_eps = eps;
  }

  CLI::App app{"minimal dequantizer/quantizer toolkit"};
  app.require_subcommand(1);

  GenOptions gen_opt;
  std::string in = "-";
  std::string out;
  std::string mode = "orthonormal";
  std::string set_ref, op_ref, symbol_ref, a_ref, b_ref, pair_ref, from_ref, to_ref;
  bool with_quantizer_transform = false;
  double eps_flag = tol.abs_eps;
  int rc = kOk;

  CLI::App* gen = app.add_subcommand("gen", "generate an operator set");
  CLI::Option* preset_opt =
      gen->add_option("--preset", gen_opt.preset_name, "named set from the built-in catalogue");
  gen->add_option("--family", gen_opt.family, "self-dual family (1, 2 or 3)")
      ->excludes(preset_opt);
  gen->add_option("--b2", gen_opt.b2);
  gen->add_option("--c2", gen_opt.c2);
  gen->add_option("--b3", gen_opt.b3);
  gen->add_option("--c3", gen_opt.c3);
  gen->add_option("--b4", gen_opt.b4);
  gen->add_option("--c4", gen_opt.c4);
  gen->add_option("--signs", gen_opt.signs, "sign flags, e.g. +-+ (one sign for family 1)");
  gen->add_option("--label", gen_opt.label, "label stored in metadata");
  gen->add_option("--out", gen_opt.out, "output path (default stdout)");
  gen->callback([&] { rc = run_gen(gen_opt, tol); });

  CLI::App* solve = app.add_subcommand("solve", "solve for the quantizers of a set");
  solve->add_option("--in", in, "input document (default stdin)");
  solve->add_option("--out", out);
  solve->callback([&] { rc = run_solve(in, out, tol); });

  CLI::App* verify = app.add_subcommand("verify", "check a document against a condition");
  verify->add_option("--in", in, "input document, preset name or - for stdin");
  verify->add_option("--mode", mode)
      ->check(CLI::IsMember({"duality", "orthonormal", "hermitian", "minimal"}));
  verify->add_option("--eps", eps_flag, "comparison tolerance");
  verify->callback([&] {
    Tolerance verify_tol = tol;
    verify_tol.abs_eps = eps_flag;
    rc = run_verify(in, mode, verify_tol);
  });

  CLI::App* symbol = app.add_subcommand("symbol", "symbol of an operator in a set");
  symbol->add_option("--set", set_ref)->required();
  CLI::Option* operator_opt = symbol->add_option("--operator", op_ref);
  symbol->add_option("--state", op_ref, "alias for --operator")->excludes(operator_opt);
  symbol->add_option("--out", out);
  symbol->callback([&] {
    if (op_ref.empty()) {
      throw MalformedDocumentError("symbol needs --operator or --state");
    }
    rc = run_symbol(set_ref, op_ref, out);
  });

  CLI::App* reconstruct_cmd = app.add_subcommand("reconstruct", "operator from a symbol");
  reconstruct_cmd->add_option("--set", set_ref)->required();
  reconstruct_cmd->add_option("--symbol", symbol_ref)->required();
  reconstruct_cmd->add_option("--out", out);
  reconstruct_cmd->callback([&] { rc = run_reconstruct(set_ref, symbol_ref, out); });

  CLI::App* star = app.add_subcommand("star", "star product of two operators");
  star->add_option("--a", a_ref)->required();
  star->add_option("--b", b_ref)->required();
  star->add_option("--pair", pair_ref)->required();
  star->add_option("--out", out);
  star->callback([&] { rc = run_star(a_ref, b_ref, pair_ref, out, tol); });

  CLI::App* transform = app.add_subcommand("transform", "basis change between sets");
  transform->add_option("--from", from_ref)->required();
  transform->add_option("--to", to_ref)->required();
  transform->add_flag("--with-quantizer-transform", with_quantizer_transform);
  transform->add_option("--out", out);
  transform->callback(
      [&] { rc = run_transform(from_ref, to_ref, with_quantizer_transform, out, tol); });

  CLI::App* tensor = app.add_subcommand("tensor", "tensor product of two sets or pairs");
  tensor->add_option("--a", a_ref)->required();
  tensor->add_option("--b", b_ref)->required();
  tensor->add_option("--out", out);
  tensor->callback([&] { rc = run_tensor(a_ref, b_ref, out, tol); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int exit_rc = app.exit(e);
    return exit_rc == 0 ? kOk : kMalformed;
  } catch (const InfeasibleParamsError& e) {
    std::cerr << "code=INFEASIBLE field=" << e.field() << " msg=\"" << e.what() << "\"\n";
    return kInfeasible;
  } catch (const NoRealSolutionError& e) {
    std::cerr << "code=INFEASIBLE field=solver msg=\"" << e.what() << "\"\n";
    return kInfeasible;
  } catch (const SingularSetError& e) {
    std::cerr << "code=SINGULAR msg=\"" << e.what() << "\"\n";
    return kSingular;
  } catch (const SingularError& e) {
    std::cerr << "code=SINGULAR msg=\"" << e.what() << "\"\n";
    return kSingular;
  } catch (const DegenerateTransformError& e) {
    std::cerr << "code=SINGULAR msg=\"" << e.what() << "\"\n";
    return kSingular;
  } catch (const NotOrthonormalBaseError& e) {
    std::cerr << "code=NOT_ORTHONORMAL msg=\"" << e.what() << "\"\n";
    return kReferenceSet;
  } catch (const NonSquareError& e) {
    std::cerr << "code=DIMENSION_MISMATCH msg=\"" << e.what() << "\"\n";
    return kDimensionMismatch;
  } catch (const DimensionMismatchError& e) {
    std::cerr << "code=DIMENSION_MISMATCH msg=\"" << e.what() << "\"\n";
    return kDimensionMismatch;
  } catch (const UnknownPresetError& e) {
    std::cerr << "code=MALFORMED msg=\"" << e.what() << "\"\n";
    return kMalformed;
  } catch (const MalformedDocumentError& e) {
    std::cerr << "code=MALFORMED msg=\"" << e.what() << "\"\n";
    return kMalformed;
  } catch (const CertificationFailedError& e) {
    std::cerr << "code=CERTIFICATION_FAILED msg=\"" << e.what() << "\"\n";
    return kVerifyFail;
  } catch (const Error& e) {
    std::cerr << "code=ERROR msg=\"" << e.what() << "\"\n";
    return kMalformed;
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_main(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "code=ERROR msg=\"" << e.what() << "\"\n";
    return kMalformed;
  }
}
