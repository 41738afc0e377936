#include "catch_amalgamated.hpp"

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "twistkit/dsl/driver.hpp"

using namespace twistkit;
using namespace twistkit::dsl;

namespace {

std::string read_spec(const std::string& name) {
  std::ifstream in(std::string(TWISTKIT_SPECS_DIR) + "/" + name);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::vector<std::string> corpus = {"moyal_t2.twk", "jordanian_axb.twk", "sabotaged.twk", "bundle_degree_d.twk"};

SpecError parse_error(const std::string& text) {
  try {
    Environment(parse_spec(text), 2);
  } catch (const SpecError& e) {
    return e;
  }
  FAIL("no error raised for: " << text);
  throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("lexer aliases and positions") {
  auto a = tokenize("X (x) Y");
  auto b = tokenize("X⊗Y");
  REQUIRE(a.size() == 4);
  REQUIRE(b.size() == 4);
  CHECK(a[1].text == "⊗");
  CHECK(b[1].text == "⊗");
  CHECK(tokenize("a − b")[1].text == "-");
  CHECK(tokenize("a · b")[1].text == "*");
  CHECK(tokenize("X → d/dx")[1].text == "->");
  // (x) after a function name is a call argument, not a tensor sign
  auto call = tokenize("exp(x)");
  REQUIRE(call.size() == 5);
  CHECK(call[2].text == "x");
  auto d = tokenize("  d/dx2 # comment\n h");
  CHECK(d[0].kind == Token::Kind::derivative);
  CHECK(d[0].text == "x2");
  CHECK(d[1].pos.line == 2);
  CHECK(d[1].pos.col == 2);
  CHECK(tokenize("⊗ h")[1].pos.col == 3);
}

TEST_CASE("expression precedence") {
  CHECK(print(parse_expression("a + b * c ⊗ d")) == "a + b * c ⊗ d");
  CHECK(same_tree(parse_expression("a + b * c ⊗ d"), parse_expression("a + (b * (c ⊗ d))")));
  CHECK(same_tree(parse_expression("-a^2"), parse_expression("-(a^2)")));
  CHECK(same_tree(parse_expression("a^b^c"), parse_expression("a^(b^c)")));
  CHECK(same_tree(parse_expression("a - b - c"), parse_expression("(a - b) - c")));
  CHECK(print(parse_expression("(a - b) * -(c + d)")) == "(a - b) * -(c + d)");
  CHECK(print(parse_expression("a - (b - c)")) == "a - (b - c)");
}

TEST_CASE("the documented declaration forms parse") {
  auto doc = parse_spec(
      "liealgebra ab { H E : [H,E] = E }\n"
      "twist moyal = exp((i*h/2)*(Y⊗X − X⊗Y))\n"
      "twist t2 : ab orders [ 1 (x) 1, H ⊗ E ]\n");
  REQUIRE(doc.declarations.size() == 3);
  CHECK(doc.declarations[0].generators == std::vector<std::string>{"H", "E"});
  CHECK(doc.declarations[0].rules.size() == 1);
  CHECK(doc.declarations[1].form == "expr");
  CHECK(print(*doc.declarations[1].body) == "exp(i * h / 2 * (Y ⊗ X - X ⊗ Y))");
  CHECK(doc.declarations[2].form == "orders");
  CHECK(*doc.declarations[2].ref("lie") == "ab");
}

TEST_CASE("printing round-trips the corpus") {
  for (const auto& name : corpus) {
    INFO(name);
    auto doc = parse_spec(read_spec(name));
    auto printed = print(doc);
    auto again = parse_spec(printed);
    CHECK(same_document(doc, again));
    CHECK(print(again) == printed);
  }
}

TEST_CASE("errors carry a code and a position inside the offending token") {
  struct Case {
    std::string text;
    ErrorCode code;
    int line, col;
  };
  const std::vector<Case> cases = {
      {"liealgebra g { X Y }\ntwist t = exp(X⊗Y", ErrorCode::syntax, 2, 18},
      {"liealgebra g { X Y }\ntwist t = exp(X⊗Z)", ErrorCode::unresolved_name, 2, 17},
      {"liealgebra g { X Y }\ntwist t = X⊗Y + X", ErrorCode::arity_mismatch, 2, 15},
      {"liealgebra g { X $ }", ErrorCode::lexical, 1, 18},
      {"liealgebra g { X }\nliealgebra g { Y }", ErrorCode::duplicate_name, 2, 1},
      {"liealgebra g { X Y }\nmodel m = torus(2)\naction a : g on m { X -> d/dx*d/dx, Y -> d/dy }", ErrorCode::invalid_declaration, 3, 1},
      {"liealgebra g { X Y }\nmodel m = affine(1)\naction a : g on m { X -> d/dx, Y -> X }", ErrorCode::unresolved_name, 3, 37},
      {"model m = torus(2)\nstar s = m via m", ErrorCode::type_mismatch, 2, 10},
      {"twist t = nope", ErrorCode::unresolved_name, 1, 1},
      {"liealgebra g { X }\nmodule m = trivial over nowhere with t", ErrorCode::unresolved_name, 2, 38},
  };
  for (const auto& c : cases) {
    INFO(c.text);
    auto e = parse_error(c.text);
    INFO(e.what());
    CHECK(e.code() == c.code);
    CHECK(e.pos().line == c.line);
    CHECK(e.pos().col == c.col);
  }
  CHECK(std::string(parse_error("liealgebra g { X Y }\ntwist t = exp(X⊗Y").what()) ==
        "2:18: E2-syntax: unexpected end of input (expected ')')");
}

TEST_CASE("evaluated twists equal the library constructions") {
  const std::size_t N = 4;
  Environment env(parse_spec(read_spec("moyal_t2.twk")), N);
  CHECK(env.twist("moyal").series == fixtures::moyal(N, env.lie("r2").alg).series());
  Environment jenv(parse_spec(read_spec("jordanian_axb.twk")), N);
  CHECK(jenv.twist("jordanian").series == fixtures::jordanian(N, jenv.lie("axb").alg).series());
  Environment senv(parse_spec(read_spec("sabotaged.twk")), N);
  CHECK(senv.twist("naive").series == fixtures::naive(N, senv.lie("axb").alg).series());

  // orders form and expression form agree
  Environment o(parse_spec("liealgebra g { X Y }\ntwist a = 1 + h*X⊗Y\ntwist b orders [ 1, X⊗Y ]"), 2);
  CHECK(o.twist("a").series == o.twist("b").series);
}

TEST_CASE("operator expressions evaluate to the expected differential operators") {
  OperatorEvaluator<AffineBasis> ev(AffineBasis{1}, 0);
  auto op = ev.eval(parse_expression("-x*d/dx"));
  CHECK(op == fixtures::line_motions()->image(0));
  OperatorEvaluator<TorusBasis> tv(TorusBasis{2}, 0);
  auto f = tv.function(parse_expression("exp(i*(x - 2*y))"));
  CHECK(f == fixtures::mode(1, -2, 0));
  CHECK_THROWS_AS(tv.eval(parse_expression("x*d/dx")), SpecError);
  CHECK_THROWS_AS(ev.eval(parse_expression("exp(i*x)")), SpecError);
}

TEST_CASE("commands on the corpus") {
  Options opt;
  opt.order = 3;
  auto moyal = run_command("all", parse_spec(read_spec("moyal_t2.twk")), opt);
  CHECK(moyal.exit_code() == 0);
  auto jordan = run_command("all", parse_spec(read_spec("jordanian_axb.twk")), opt);
  CHECK(jordan.exit_code() == 0);
  auto bundles = run_command("chern", parse_spec(read_spec("bundle_degree_d.twk")), opt);
  CHECK(bundles.exit_code() == 0);
  CHECK(bundles.reports.size() == 6);

  auto broken = run_command("all", parse_spec(read_spec("sabotaged.twk")), opt);
  CHECK(broken.exit_code() == 1);
  bool cocycle_at_two = false, star_blocked = false;
  for (const auto& r : broken.reports) {
    if (r.check.find("cocycle") != std::string::npos && r.status == Status::fail && r.lowest_failing_order == 2u)
      cocycle_at_two = true;
    if (r.subject == "broken" && r.status == Status::blocked) star_blocked = true;
  }
  CHECK(cocycle_at_two);
  CHECK(star_blocked);

  auto assoc = run_command("assoc-check", parse_spec(read_spec("sabotaged.twk")), opt);
  CHECK(assoc.exit_code() == 1);
  bool assoc_at_two = false;
  for (const auto& r : assoc.reports)
    if (r.check == "associativity" && r.lowest_failing_order == 2u) assoc_at_two = true;
  CHECK(assoc_at_two);
}

TEST_CASE("star-eval and equiv-apply options") {
  Options opt;
  opt.order = 2;
  auto doc = parse_spec(read_spec("moyal_t2.twk"));
  CHECK_THROWS_AS(run_command("star-eval", doc, opt), UsageError);
  opt.lhs = "exp(i*x)";
  opt.rhs = "exp(i*y)";
  auto r = run_command("star-eval", doc, opt);
  CHECK(r.exit_code() == 0);
  opt.transform = "1 + h*d/dx*d/dy";
  CHECK(run_command("equiv-apply", doc, opt).exit_code() == 0);
  opt.transform = "1 + h";
  CHECK(run_command("equiv-apply", doc, opt).exit_code() == 1);
  CHECK_THROWS_AS(run_command("no-such-command", doc, opt), UsageError);
  opt.name = "missing";
  CHECK_THROWS_AS(run_command("assoc-check", doc, opt), UsageError);
}

TEST_CASE("machine output is deterministic") {
  Options opt;
  opt.order = 3;
  for (const auto& name : corpus) {
    auto doc = parse_spec(read_spec(name));
    auto first = to_json(run_command("all", doc, opt), name, opt).dump(2);
    auto second = to_json(run_command("all", doc, opt), name, opt).dump(2);
    CHECK(first == second);
  }
  Options chern;
  chern.degree = 1;
  auto c = run_command("chern", SpecDocument{}, chern);
  REQUIRE(c.reports.size() == 1);
  CHECK(c.reports[0].details.front() == "c1 = 1.000000000000 (target 1, |err| < 1e-12)");
}
