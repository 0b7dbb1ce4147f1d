// Randomized properties. Every generator is seeded, so failures reproduce;
// each failing case prints the generated input.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "aeadlint/report.h"
#include "aeadlint/rules.h"
#include "aeadlint/source.h"
#include "aeadlint/stats.h"

namespace aeadlint {
namespace {

constexpr int kCases = 300;

SourceUnit Unit(const std::string& text) { return SourceUnit::FromText("prop.rs", text); }

template <typename T>
const T& Pick(std::mt19937& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

int Uniform(std::mt19937& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// ---- random programs ----

const std::vector<std::string>& Statements() {
  static const std::vector<std::string> kStatements = {
      "let key = Key::<Aes256Gcm>::from_slice(b\"0123456789abcdef0123456789abcdef\");",
      "let cipher = Aes256Gcm::new(key);",
      "let nonce = Nonce::from_slice(b\"unique nonce\");",
      "let ct = cipher.encrypt(nonce, b\"x\".as_ref()).unwrap();",
      "let mut rng = SmallRng::seed_from_u64(42);",
      "let mut n = [0u8; 12];",
      "OsRng.fill_bytes(&mut n);",
      "let ct2 = cipher.encrypt(Nonce::from_slice(&n), msg)?;",
      "let input = std::env::var(\"KEY\").unwrap();",
      "let k2 = Aes256Gcm::new_from_slice(input.as_bytes()).expect(\"len\");",
      "println!(\"{} {{\", x);",
      "let s = \"for x in y { encrypt( }\";",
      "let pt = cipher.decrypt(nonce, ct.as_ref()).expect(\"auth\");",
      "let fresh = Aes256Gcm::generate_nonce(&mut OsRng);",
      "let ct3 = cipher.encrypt(&fresh, msg).map_err(|e| e.to_string())?;",
      "let c = 'x';",
      "let r = r#\"raw { \"# ;",
      "total += 1;",
  };
  return kStatements;
}

void EmitBlock(std::mt19937& rng, std::ostringstream& out, int depth, int indent) {
  const std::string pad(indent * 4, ' ');
  const int n = Uniform(rng, 1, 5);
  for (int i = 0; i < n; ++i) {
    if (depth < 3 && Uniform(rng, 0, 4) == 0) {
      static const std::vector<std::string> kHeads = {
          "for i in 0..3 {", "loop {", "while ok {", "if flag {", "{"};
      out << pad << Pick(rng, kHeads) << "\n";
      EmitBlock(rng, out, depth + 1, indent + 1);
      out << pad << "}\n";
    } else {
      out << pad << Pick(rng, Statements()) << "\n";
    }
  }
}

std::string RandomProgram(std::mt19937& rng) {
  std::ostringstream out;
  out << "use aes_gcm::{aead::{Aead, KeyInit, OsRng}, Aes256Gcm, Key, Nonce};\n";
  if (Uniform(rng, 0, 3) == 0) out << "use aes_gcm::aead::NewAead;\n";
  const int fns = Uniform(rng, 1, 3);
  for (int f = 0; f < fns; ++f) {
    out << "fn f" << f << "(msg: &[u8]) -> Result<(), String> {\n";
    EmitBlock(rng, out, 0, 1);
    out << "    Ok(())\n}\n";
  }
  return out.str();
}

struct Observed {
  RuleId rule;
  std::size_t line;
  std::size_t column;
  std::string message;
  friend bool operator==(const Observed&, const Observed&) = default;
};

std::vector<Observed> Observe(const std::vector<Finding>& findings) {
  std::vector<Observed> out;
  for (const Finding& f : findings) {
    out.push_back({f.rule_id, f.location.line, f.location.column, f.message});
  }
  return out;
}

TEST(Property, AnalyzeIsDeterministic) {
  std::mt19937 rng(1001);
  for (int i = 0; i < kCases; ++i) {
    const std::string program = RandomProgram(rng);
    const SourceUnit unit = Unit(program);
    const auto first = Analyze(unit);
    EXPECT_EQ(Analyze(unit), first) << program;
    EXPECT_EQ(Analyze(Unit(program)), first) << program;
    EXPECT_TRUE(std::is_sorted(first.begin(), first.end(), [](const Finding& a, const Finding& b) {
      return std::tie(a.location.line, a.location.column, a.rule_id) <
             std::tie(b.location.line, b.location.column, b.rule_id);
    })) << program;
  }
}

TEST(Property, CommentsNeverChangeFindings) {
  static const std::vector<std::string> kJunk = {
      " // cipher.encrypt(&nonce, x).unwrap(); { for i in 0..3 {",
      " /* SmallRng::seed_from_u64(1) } loop { */",
      " // OsRng.fill_bytes(&mut nonce); generate_nonce",
      " // let key = Key::from_slice(b\"0123456789abcdef0123456789abcdef\");",
      " /* \" unterminated quote */",
      " // use aes_gcm::aead::NewAead; std::env::var(\"K\")",
      " /* nested /* block */ still comment } */",
  };
  std::mt19937 rng(2002);
  for (int i = 0; i < kCases; ++i) {
    const std::string program = RandomProgram(rng);
    std::istringstream lines(program);
    std::ostringstream commented;
    std::string line;
    while (std::getline(lines, line)) {
      commented << line;
      if (Uniform(rng, 0, 2) == 0) commented << Pick(rng, kJunk);
      commented << "\n";
    }
    EXPECT_EQ(Observe(Analyze(Unit(commented.str()))), Observe(Analyze(Unit(program))))
        << "original:\n" << program << "\ncommented:\n" << commented.str();
  }
}

// ---- initialize-then-fill ----

std::string InitThenFillProgram(std::mt19937& rng) {
  static const std::vector<std::string> kKeyNames = {"key", "k", "key_bytes", "secret"};
  static const std::vector<std::string> kNonceNames = {"nonce", "n", "iv", "nonce_bytes"};
  static const std::vector<std::string> kFiller = {
      "let pt = b\"hello\";", "println!(\"start\");", "let aad = b\"\";", "let count = 3;"};
  const std::string key = Pick(rng, kKeyNames);
  const std::string nonce = Pick(rng, kNonceNames);
  const bool chacha = Uniform(rng, 0, 1) == 1;
  const std::string cipher_type = chacha ? "ChaCha20Poly1305" : "Aes256Gcm";

  auto decl = [&](const std::string& name, int size) {
    switch (Uniform(rng, 0, 2)) {
      case 0: return "let mut " + name + " = [0u8; " + std::to_string(size) + "];";
      case 1: return "let mut " + name + ": [u8; " + std::to_string(size) + "] = [0; " +
                     std::to_string(size) + "];";
      default: return "let mut " + name + " = [0x00u8; " + std::to_string(size) + "];";
    }
  };
  auto fill = [&](const std::string& name) {
    switch (Uniform(rng, 0, 2)) {
      case 0: return "OsRng.fill_bytes(&mut " + name + ");";
      case 1: return "rand::rngs::OsRng.fill_bytes(&mut " + name + ");";
      default: return "OsRng.try_fill_bytes(&mut " + name + ").map_err(|e| e.to_string())?;";
    }
  };
  auto filler = [&](std::vector<std::string>& body) {
    for (int i = Uniform(rng, 0, 2); i > 0; --i) body.push_back(Pick(rng, kFiller));
  };

  std::vector<std::string> body;
  body.push_back(decl(key, 32));
  filler(body);
  body.push_back(fill(key));
  filler(body);
  body.push_back(decl(nonce, 12));
  filler(body);
  body.push_back(fill(nonce));
  filler(body);
  if (Uniform(rng, 0, 1) == 0) {
    body.push_back("let cipher = " + cipher_type + "::new(Key::<" + cipher_type +
                   ">::from_slice(&" + key + "));");
  } else {
    body.push_back("let cipher = " + cipher_type + "::new_from_slice(&" + key +
                   ").map_err(|e| e.to_string())?;");
  }
  body.push_back("let ct = cipher.encrypt(Nonce::from_slice(&" + nonce +
                 "), b\"msg\".as_ref()).map_err(|e| e.to_string())?;");
  body.push_back("println!(\"{}\", ct.len());");

  std::ostringstream out;
  out << "use " << (chacha ? "chacha20poly1305" : "aes_gcm") << "::{aead::{Aead, KeyInit, OsRng}, "
      << cipher_type << ", Key, Nonce};\nuse rand::RngCore;\n\n"
      << "fn main() -> Result<(), String> {\n";
  const bool in_loop = Uniform(rng, 0, 2) == 0;
  if (in_loop) out << "    for _ in 0..4 {\n";
  for (const std::string& s : body) out << (in_loop ? "        " : "    ") << s << "\n";
  if (in_loop) out << "    }\n";
  out << "    Ok(())\n}\n";
  return out.str();
}

TEST(Property, InitializeThenFillIsClean) {
  std::mt19937 rng(3003);
  for (int i = 0; i < kCases; ++i) {
    const std::string program = InitThenFillProgram(rng);
    const auto findings = Analyze(Unit(program));
    EXPECT_TRUE(findings.empty()) << program << "first finding: "
                                  << (findings.empty() ? "" : findings[0].message);
  }
}

// ---- loop extraction against the generator's own brace bookkeeping ----

struct ExpectedLoop {
  LoopKind kind;
  std::size_t header;
  std::size_t open;
  std::size_t close;
};

class LoopProgram {
 public:
  explicit LoopProgram(std::mt19937& rng) : rng_(rng) {
    Emit("fn main() {\n");
    Block(0);
    Emit("}\n");
  }
  const std::string& text() const { return text_; }
  const std::vector<ExpectedLoop>& loops() const { return loops_; }

 private:
  void Emit(const std::string& s) { text_ += s; }

  void Block(int depth) {
    static const std::vector<std::string> kLeaves = {
        "let s = \"{ for x in y {\";\n",
        "// for i in 0..3 { unbalanced\n",
        "/* loop { */\n",
        "println!(\"{}}}\", v);\n",
        "let c = '{';\n",
        "let b = b\"}\";\n",
        "cipher.encrypt(&nonce, m)?;\n",
        "let before = format!(\"{x}\");\n",
        "let looping = 1; let fortune = 2; let awhile = 3;\n",
    };
    const int n = Uniform(rng_, 1, 4);
    for (int i = 0; i < n; ++i) {
      const int choice = depth < 4 ? Uniform(rng_, 0, 8) : 0;
      if (choice <= 2) {
        Emit(Pick(rng_, kLeaves));
        continue;
      }
      struct Head {
        const char* text;
        std::optional<LoopKind> kind;
      };
      static const std::vector<Head> kHeads = {
          {"for i in 0..n ", LoopKind::kFor},
          {"for (a, b) in pairs.iter().zip([1, 2]) ", LoopKind::kFor},
          {"while let Some(x) = it.next() ", LoopKind::kWhile},
          {"while count < 10 ", LoopKind::kWhile},
          {"loop ", LoopKind::kLoop},
          {"if flag ", std::nullopt},
          {"let f = |x: u8| ", std::nullopt},
          {"unsafe ", std::nullopt},
          {"match v { _ => ", std::nullopt},
      };
      const Head& head = Pick(rng_, kHeads);
      const std::size_t header = text_.size();
      Emit(head.text);
      const std::size_t open = text_.size();
      Emit("{\n");
      Block(depth + 1);
      const std::size_t close = text_.size();
      Emit("}");
      if (std::string(head.text).starts_with("match")) Emit(" }");
      if (std::string(head.text).starts_with("let")) Emit(";");
      Emit("\n");
      if (head.kind) loops_.push_back({*head.kind, header, open, close});
    }
  }

  std::mt19937& rng_;
  std::string text_;
  std::vector<ExpectedLoop> loops_;
};

// Naive stack matcher over the literal- and comment-blanked text.
std::map<std::size_t, std::size_t> BruteForceBraces(const std::string& s) {
  std::map<std::size_t, std::size_t> match;
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '{') stack.push_back(i);
    if (s[i] == '}' && !stack.empty()) {
      match[stack.back()] = i;
      stack.pop_back();
    }
  }
  return match;
}

TEST(Property, LoopExtractionMatchesBraceStructure) {
  std::mt19937 rng(4004);
  int nonempty = 0;
  for (int i = 0; i < kCases; ++i) {
    const LoopProgram program(rng);
    const SourceUnit unit = Unit(program.text());
    const LoopExtraction got = ExtractLoopBodies(unit);
    EXPECT_TRUE(got.notes.empty()) << program.text();
    std::vector<ExpectedLoop> expected = program.loops();
    std::sort(expected.begin(), expected.end(),
              [](const ExpectedLoop& a, const ExpectedLoop& b) { return a.header < b.header; });
    ASSERT_EQ(got.bodies.size(), expected.size()) << program.text();
    const auto braces = BruteForceBraces(unit.structure_text());
    nonempty += !expected.empty();
    for (std::size_t k = 0; k < expected.size(); ++k) {
      const LoopBody& b = got.bodies[k];
      EXPECT_EQ(b.header_kind, expected[k].kind) << program.text();
      EXPECT_EQ(b.header.byte_offset, expected[k].header) << program.text();
      EXPECT_EQ(b.body_start.byte_offset, expected[k].open + 1) << program.text();
      EXPECT_EQ(b.body_end, expected[k].close) << program.text();
      EXPECT_EQ(braces.at(b.body_start.byte_offset - 1), b.body_end) << program.text();
      EXPECT_EQ(b.body_text,
                unit.scan_text().substr(expected[k].open + 1, expected[k].close - expected[k].open - 1));
    }
  }
  EXPECT_GT(nonempty, kCases / 2);
}

TEST(Property, TruncatedLoopYieldsOneNote) {
  std::mt19937 rng(4005);
  for (int i = 0; i < kCases; ++i) {
    const LoopProgram program(rng);
    if (program.loops().empty()) continue;
    // Cut the text just after the outermost loop's opening brace.
    const ExpectedLoop& first = *std::min_element(
        program.loops().begin(), program.loops().end(),
        [](const ExpectedLoop& a, const ExpectedLoop& b) { return a.header < b.header; });
    const std::string cut = program.text().substr(0, first.open + 1) + "\nlet x = 1;\n";
    const LoopExtraction got = ExtractLoopBodies(Unit(cut));
    ASSERT_EQ(got.notes.size(), 1u) << cut;
    EXPECT_EQ(got.notes[0].location.byte_offset, first.header);
  }
}

// ---- nonce lifecycle ----

TEST(Property, RegenerationOnlyRemovesReuseFindings) {
  static const std::vector<std::string> kRegen = {
      "nonce = Aes256Gcm::generate_nonce(&mut OsRng);",
      "OsRng.fill_bytes(&mut nonce);",
      "nonce = Aes256Gcm::generate_nonce(OsRng);",
  };
  static const std::vector<std::string> kFiller = {
      "println!(\"{:?}\", c);", "let tmp = msg.len();", "// nonce = OsRng",
      "let label = \"nonce = OsRng\";"};
  std::mt19937 rng(5005);
  for (int i = 0; i < kCases; ++i) {
    const int calls = Uniform(rng, 2, 6);
    std::vector<bool> regen_after(calls - 1);
    for (std::size_t g = 0; g < regen_after.size(); ++g) regen_after[g] = Uniform(rng, 0, 2) == 0;

    auto build = [&](const std::vector<bool>& regen) {
      std::ostringstream out;
      out << "use aes_gcm::{aead::{Aead, AeadCore, KeyInit, OsRng}, Aes256Gcm};\n"
          << "fn run(cipher: &Aes256Gcm, msg: &[u8]) -> Result<(), aes_gcm::Error> {\n"
          << "    let mut nonce = Aes256Gcm::generate_nonce(&mut OsRng);\n";
      for (int c = 0; c < calls; ++c) {
        out << "    let c" << c << " = cipher.encrypt(&nonce, msg)?;\n";
        if (Uniform(rng, 0, 1) == 0) out << "    " << Pick(rng, kFiller) << "\n";
        if (c + 1 < calls && regen[c]) out << "    " << Pick(rng, kRegen) << "\n";
      }
      out << "    Ok(())\n}\n";
      return out.str();
    };

    const std::string base = build(regen_after);
    const int gaps_without = static_cast<int>(std::count(regen_after.begin(), regen_after.end(), false));
    const auto base_findings = DetectNonceReuseMultiCall(Unit(base));
    EXPECT_EQ(static_cast<int>(base_findings.size()), gaps_without) << base;

    // Adding regeneration to one more gap never adds findings.
    std::vector<bool> more = regen_after;
    more[Uniform(rng, 0, calls - 2)] = true;
    const std::string fixed = build(more);
    EXPECT_LE(DetectNonceReuseMultiCall(Unit(fixed)).size(), base_findings.size()) << fixed;
  }
}

// ---- statistics ----

TEST(Property, WilsonIntervalContainsEstimate) {
  static const std::vector<double> kConfidence = {0.8, 0.9, 0.95, 0.99, 0.999};
  std::mt19937 rng(6006);
  for (int i = 0; i < kCases; ++i) {
    const int n = Uniform(rng, 1, 5000);
    const int k = Uniform(rng, 0, n);
    const Proportion p{k, n};
    Interval previous{p.Rate(), p.Rate()};
    for (double conf : kConfidence) {
      const Interval ci = WilsonInterval(p, conf);
      EXPECT_GE(ci.lower, 0.0);
      EXPECT_LE(ci.upper, 1.0);
      EXPECT_LE(ci.lower, p.Rate() + 1e-12) << k << "/" << n;
      EXPECT_GE(ci.upper, p.Rate() - 1e-12) << k << "/" << n;
      EXPECT_LE(ci.lower, previous.lower + 1e-12);
      EXPECT_GE(ci.upper, previous.upper - 1e-12);
      previous = ci;
    }
  }
}

ContingencyTable RandomTable(std::mt19937& rng, int rows, int cols, int lo, int hi) {
  ContingencyTable t;
  for (;;) {
    t.counts.assign(rows, std::vector<std::int64_t>(cols));
    for (auto& row : t.counts) {
      for (auto& c : row) c = Uniform(rng, lo, hi);
    }
    bool ok = true;
    for (int r = 0; r < rows; ++r) {
      ok = ok && std::accumulate(t.counts[r].begin(), t.counts[r].end(), std::int64_t{0}) > 0;
    }
    for (int c = 0; c < cols; ++c) {
      std::int64_t sum = 0;
      for (int r = 0; r < rows; ++r) sum += t.counts[r][c];
      ok = ok && sum > 0;
    }
    if (ok) break;
  }
  for (int r = 0; r < rows; ++r) t.row_labels.push_back("r" + std::to_string(r));
  for (int c = 0; c < cols; ++c) t.col_labels.push_back("c" + std::to_string(c));
  return t;
}

void ExpectSameTest(const ChiSquareResult& a, const ChiSquareResult& b) {
  EXPECT_NEAR(a.statistic, b.statistic, 1e-9 * std::max(1.0, a.statistic));
  EXPECT_EQ(a.df, b.df);
  EXPECT_NEAR(a.p_value, b.p_value, 1e-12);
  EXPECT_NEAR(a.cramers_v, b.cramers_v, 1e-12);
  EXPECT_EQ(a.yates_applied, b.yates_applied);
  EXPECT_EQ(a.low_expected_warning, b.low_expected_warning);
}

TEST(Property, ChiSquareInvariantUnderPermutationAndTranspose) {
  std::mt19937 rng(7007);
  for (int i = 0; i < kCases; ++i) {
    const ContingencyTable t = RandomTable(rng, Uniform(rng, 2, 5), Uniform(rng, 2, 5), 0, 50);
    const ChiSquareResult base = ChiSquareDefault(t);
    EXPECT_GE(base.statistic, 0.0);
    EXPECT_GE(base.p_value, 0.0);
    EXPECT_LE(base.p_value, 1.0);

    ContingencyTable permuted = t;
    std::shuffle(permuted.counts.begin(), permuted.counts.end(), rng);
    std::vector<std::size_t> col_order(t.cols());
    std::iota(col_order.begin(), col_order.end(), 0);
    std::shuffle(col_order.begin(), col_order.end(), rng);
    for (auto& row : permuted.counts) {
      std::vector<std::int64_t> copy = row;
      for (std::size_t c = 0; c < row.size(); ++c) row[c] = copy[col_order[c]];
    }
    ExpectSameTest(ChiSquareDefault(permuted), base);

    ContingencyTable transposed;
    transposed.row_labels = t.col_labels;
    transposed.col_labels = t.row_labels;
    transposed.counts.assign(t.cols(), std::vector<std::int64_t>(t.rows()));
    for (std::size_t r = 0; r < t.rows(); ++r) {
      for (std::size_t c = 0; c < t.cols(); ++c) transposed.counts[c][r] = t.counts[r][c];
    }
    ExpectSameTest(ChiSquareDefault(transposed), base);
  }
}

// Exact rational arithmetic for the Pearson statistic of small tables.
struct Rational {
  __int128 num = 0;
  __int128 den = 1;

  static __int128 Gcd(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }
  void Reduce() {
    const __int128 g = Gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  Rational& operator+=(const Rational& o) {
    num = num * o.den + o.num * den;
    den *= o.den;
    Reduce();
    return *this;
  }
  long double Value() const {
    return static_cast<long double>(num) / static_cast<long double>(den);
  }
};

TEST(Property, ChiSquareMatchesExactRationalOn2x3) {
  std::mt19937 rng(8008);
  for (int i = 0; i < kCases; ++i) {
    const ContingencyTable t = RandomTable(rng, 2, 3, 0, 40);
    std::int64_t n = 0;
    std::vector<std::int64_t> rows(2, 0), cols(3, 0);
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 3; ++c) {
        rows[r] += t.counts[r][c];
        cols[c] += t.counts[r][c];
        n += t.counts[r][c];
      }
    }
    // chi2 = N * (sum O^2 / (R_i C_j) - 1)
    Rational sum;
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 3; ++c) {
        Rational term{static_cast<__int128>(t.counts[r][c]) * t.counts[r][c],
                      static_cast<__int128>(rows[r]) * cols[c]};
        term.Reduce();
        sum += term;
      }
    }
    Rational chi{n * (sum.num - sum.den), sum.den};
    chi.Reduce();
    const long double exact = chi.Value();
    const ChiSquareResult got = ChiSquare(t, false);
    EXPECT_EQ(got.df, 2);
    EXPECT_NEAR(got.statistic, static_cast<double>(exact), 1e-9 * std::max(1.0L, exact));
    // df = 2: the upper tail is exactly exp(-x/2).
    EXPECT_NEAR(got.p_value, std::exp(-static_cast<double>(exact) / 2.0), 1e-10);
    const double v = std::sqrt(static_cast<double>(exact) / static_cast<double>(n));
    EXPECT_NEAR(got.cramers_v, v, 1e-9);
  }
}

// ---- taxonomy ----

TEST(Property, TaxonomySharesSumToHundred) {
  static const std::vector<std::string> kCodes = {"E0599", "E0432", "E0433", "E0277",
                                                  "E0308", "E0061", "E0425", "E9999"};
  std::mt19937 rng(9009);
  for (int i = 0; i < kCases; ++i) {
    std::vector<CompilationOutcome> outcomes;
    const int n = Uniform(rng, 1, 40);
    for (int s = 0; s < n; ++s) {
      std::vector<Diagnostic> diags;
      for (int d = Uniform(rng, 0, 4); d > 0; --d) {
        const bool warning = Uniform(rng, 0, 3) == 0;
        diags.push_back({warning ? DiagnosticLevel::kWarning : DiagnosticLevel::kError,
                         Pick(rng, kCodes), "message", std::nullopt});
      }
      outcomes.push_back(MakeCompilationOutcome("s" + std::to_string(s), diags));
    }
    const TaxonomyReport t = BuildTaxonomy(outcomes);
    const int failing = static_cast<int>(std::count_if(
        outcomes.begin(), outcomes.end(), [](const CompilationOutcome& o) { return !o.compiled; }));
    EXPECT_EQ(t.failing, failing);
    int counted = 0;
    for (const auto& [cls, count] : t.class_counts) counted += count;
    EXPECT_EQ(counted, failing);
    double total = 0;
    for (ErrorClass c : kAllErrorClasses) total += t.Share(c);
    EXPECT_NEAR(total, failing > 0 ? 100.0 : 0.0, 1e-9);
  }
}

}  // namespace
}  // namespace aeadlint
