#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "quatfhe/circuit.hpp"
#include "quatfhe/errors.hpp"
#include "quatfhe/scheme.hpp"

namespace quatfhe::cli {

namespace {

constexpr std::size_t kDefaultPrimeBits = 512;
constexpr double kLayoutTolerance = 0.10;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << bytes;
  if (!out) throw IoError("failed writing '" + path + "'");
}

BigInt parse_decimal(const std::string& text, const std::string& what) {
  const bool digits =
      !text.empty() && std::all_of(text.begin(), text.end(), [](char c) {
        return c >= '0' && c <= '9';
      });
  if (!digits) throw UsageError(what + " must be a non-negative decimal");
  return BigInt(text, 10);
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) {
    return false;
  }
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::pair<std::string, std::string> split_binding(const std::string& arg) {
  const auto eq = arg.find('=');
  if (eq == std::string::npos) {
    throw UsageError("binding '" + arg + "' must look like name=value");
  }
  std::string name = arg.substr(0, eq);
  if (!is_identifier(name)) {
    throw UsageError("'" + name + "' is not a valid variable name");
  }
  return {std::move(name), arg.substr(eq + 1)};
}

VerifyPolicy parse_policy(const std::string& s) {
  return s == "paper" ? VerifyPolicy::paper : VerifyPolicy::strict;
}

struct SeedOption {
  std::uint64_t value = 0;
  CLI::Option* option = nullptr;

  void attach(CLI::App& cmd) {
    option = cmd.add_option("--seed", value,
                            "Seed for reproducible output (falls back to "
                            "QUATFHE_SEED)")
                 ->envname("QUATFHE_SEED");
  }

  RandomSource make() const {
    if (option != nullptr && option->count() > 0) return RandomSource(value);
    return RandomSource();
  }
};

int cmd_keygen(std::size_t bits, const std::string& out_path,
               const SeedOption& seed, std::ostream& out) {
  RandomSource rng = seed.make();
  const SecretKey sk = keygen(bits, rng);
  write_file(out_path, serialize_key(sk));
  out << to_hex(sk.params().n()) << "\n";
  return kSuccess;
}

int cmd_encrypt(const std::string& key_path, const std::string& plaintext,
                const std::string& out_path, const SeedOption& seed) {
  const SecretKey sk = deserialize_key(read_file(key_path));
  const BigInt sigma = parse_decimal(plaintext, "--plaintext");
  RandomSource rng = seed.make();
  write_file(out_path, serialize_ct(encrypt(sk, sigma, rng)));
  return kSuccess;
}

int cmd_decrypt(const std::string& key_path, const std::string& in_path,
                VerifyPolicy policy, std::ostream& out) {
  const SecretKey sk = deserialize_key(read_file(key_path));
  const Ciphertext ct = deserialize_ct(read_file(in_path));
  out << decrypt_verify(sk, ct, policy).get_str() << "\n";
  return kSuccess;
}

int cmd_eval(const std::string& key_path, const std::string& expr_text,
             const std::vector<std::string>& binds,
             const std::vector<std::string>& inputs,
             const std::string& out_path, const SeedOption& seed,
             std::ostream& out) {
  const circuit::ExprPtr expr = circuit::parse(expr_text);
  if (!binds.empty() && !inputs.empty()) {
    throw UsageError("use either --bind (with --key) or --input, not both");
  }

  // Compile phase: the key holder (or the evaluator, for --input) turns the
  // expression into a tree of ciphertexts.
  std::optional<circuit::EncryptedProgram> program;
  if (!key_path.empty()) {
    circuit::Environment env;
    for (const auto& b : binds) {
      auto [name, value] = split_binding(b);
      env[name] = parse_decimal(value, "value of '" + name + "'");
    }
    const SecretKey sk = deserialize_key(read_file(key_path));
    RandomSource rng = seed.make();
    program = circuit::compile(*expr, sk, env, rng);
  } else {
    if (!binds.empty()) throw UsageError("--bind requires --key");
    circuit::CiphertextEnvironment env;
    for (const auto& in : inputs) {
      auto [name, path] = split_binding(in);
      env.insert_or_assign(name, deserialize_ct(read_file(path)));
    }
    program = circuit::bind_encrypted(*expr, env);
  }

  // Evaluation phase: no key in scope.
  const Ciphertext result = circuit::eval_encrypted(*program);
  write_file(out_path, serialize_ct(result));
  const circuit::ExprStats st = circuit::stats(*expr);
  out << "nodes=" << st.node_count << " mul_depth=" << st.mul_depth << "\n";
  return kSuccess;
}

Ciphertext perturb(const Ciphertext& ct, RandomSource& rng) {
  const Modulus& n2 = ct.params().n_squared();
  const std::size_t entry = rng.uniform_u64(16);
  const std::size_t coeff = rng.uniform_u64(4);
  const BigInt delta = rng.uniform_below(n2.value() - 1) + 1;
  QMatrix body = ct.body();
  auto c = body.entries()[entry].coefficients();
  c[coeff] += delta;
  body.set(entry / 4, entry % 4, Quaternion(n2, c[0], c[1], c[2], c[3]));
  return Ciphertext(ct.params(), std::move(body));
}

int cmd_tamper_demo(const std::string& key_path, std::size_t trials,
                    VerifyPolicy policy, const SeedOption& seed,
                    std::ostream& out) {
  const SecretKey sk = deserialize_key(read_file(key_path));
  RandomSource master = seed.make();
  std::size_t detected = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    RandomSource rng(master.next_u64());
    const BigInt sigma = rng.uniform_below(sk.params().n_squared().value());
    const Ciphertext tampered = perturb(encrypt(sk, sigma, rng), rng);
    try {
      decrypt_verify(sk, tampered, policy);
    } catch (const VerificationFailure&) {
      ++detected;
    }
  }
  out << "policy=" << to_string(policy) << " trials=" << trials
      << " detected=" << detected << " rate=";
  if (trials == 0) {
    out << "n/a\n";
  } else {
    out << std::fixed << std::setprecision(4)
        << static_cast<double>(detected) / static_cast<double>(trials) << "\n";
  }
  return kSuccess;
}

template <class F>
double time_ms(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

bool within_layout(std::size_t actual, std::size_t expected) {
  const double diff = std::abs(static_cast<double>(actual) -
                               static_cast<double>(expected));
  return diff <= kLayoutTolerance * static_cast<double>(expected);
}

int cmd_bench(const std::vector<std::size_t>& bits_list, std::size_t trials,
              const std::string& out_path, const SeedOption& seed,
              std::ostream& out, std::ostream& err) {
  if (trials == 0) throw UsageError("--trials must be positive");
  RandomSource master = seed.make();
  std::ostringstream csv;
  csv << "prime_bits,keygen_ms,encrypt_ms,he_add_ms,he_mul_ms,decrypt_ms,"
         "key_bytes,ciphertext_bytes\n";
  for (const std::size_t bits : bits_list) {
    std::vector<double> t_keygen, t_encrypt, t_add, t_mul, t_decrypt;
    std::size_t key_bytes = 0;
    std::size_t ct_bytes = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      RandomSource rng(master.next_u64());
      std::optional<SecretKey> sk;
      t_keygen.push_back(time_ms([&] { sk.emplace(keygen(bits, rng)); }));
      const BigInt& n2 = sk->params().n_squared().value();
      const BigInt s1 = rng.uniform_below(n2);
      const BigInt s2 = rng.uniform_below(n2);
      std::optional<Ciphertext> c1, c2, sum, prod;
      t_encrypt.push_back(time_ms([&] { c1.emplace(encrypt(*sk, s1, rng)); }));
      c2.emplace(encrypt(*sk, s2, rng));
      t_add.push_back(time_ms([&] { sum.emplace(he_add(*c1, *c2)); }));
      t_mul.push_back(time_ms([&] { prod.emplace(he_mul(*c1, *c2)); }));
      BigInt recovered;
      t_decrypt.push_back(
          time_ms([&] { recovered = decrypt_verify(*sk, *prod); }));
      if (recovered != reduce(s1 * s2, n2)) {
        err << "bench: product decrypted incorrectly at " << bits << " bits\n";
        return kInternalError;
      }
      key_bytes = serialize_key(*sk).size();
      ct_bytes = serialize_ct(*c1).size();
      const std::size_t ct_layout = ciphertext_layout_bytes(sk->params());
      const std::size_t key_layout = key_layout_bytes(sk->params());
      if (!within_layout(ct_bytes, ct_layout) ||
          !within_layout(key_bytes, key_layout)) {
        err << "bench: serialized sizes " << ct_bytes << "/" << key_bytes
            << " stray more than 10% from layout " << ct_layout << "/"
            << key_layout << "\n";
        return kInternalError;
      }
    }
    csv << bits << std::fixed << std::setprecision(3) << ','
        << median(t_keygen) << ',' << median(t_encrypt) << ','
        << median(t_add) << ',' << median(t_mul) << ',' << median(t_decrypt)
        << ',' << key_bytes << ',' << ct_bytes << '\n';
    csv.unsetf(std::ios::fixed);
  }
  if (out_path.empty()) {
    out << csv.str();
  } else {
    write_file(out_path, csv.str());
  }
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Verifiable noise-free homomorphic encryption over Lipschitz "
               "quaternion matrices"};
  app.require_subcommand(1);

  // keygen
  std::size_t bits = kDefaultPrimeBits;
  std::string key_out;
  SeedOption keygen_seed;
  auto* keygen_cmd = app.add_subcommand("keygen", "Generate a secret key");
  keygen_cmd->add_option("--bits", bits, "Bits per prime factor of N")
      ->check(CLI::Range(std::size_t{3}, std::size_t{8192}));
  keygen_cmd->add_option("--out", key_out, "Key file to write")->required();
  keygen_seed.attach(*keygen_cmd);

  // encrypt
  std::string enc_key;
  std::string enc_plain;
  std::string enc_out;
  SeedOption enc_seed;
  auto* encrypt_cmd = app.add_subcommand("encrypt", "Encrypt a plaintext");
  encrypt_cmd->add_option("--key", enc_key)->required();
  encrypt_cmd->add_option("--plaintext", enc_plain, "Decimal value in [0, N^2)")
      ->required();
  encrypt_cmd->add_option("--out", enc_out)->required();
  enc_seed.attach(*encrypt_cmd);

  // decrypt
  std::string dec_key;
  std::string dec_in;
  std::string dec_policy = "strict";
  auto* decrypt_cmd =
      app.add_subcommand("decrypt", "Decrypt and verify a ciphertext");
  decrypt_cmd->add_option("--key", dec_key)->required();
  decrypt_cmd->add_option("--in", dec_in)->required();
  decrypt_cmd->add_option("--policy", dec_policy)
      ->check(CLI::IsMember({"paper", "strict"}));

  // eval
  std::string eval_key;
  std::string eval_expr;
  std::vector<std::string> eval_binds;
  std::vector<std::string> eval_inputs;
  std::string eval_out;
  SeedOption eval_seed;
  auto* eval_cmd = app.add_subcommand(
      "eval", "Evaluate an arithmetic expression homomorphically");
  eval_cmd->add_option("--key", eval_key,
                       "Key file; needed to encrypt --bind values and "
                       "constants");
  eval_cmd->add_option("--expr", eval_expr)->required();
  eval_cmd->add_option("--bind", eval_binds, "name=decimal plaintext binding");
  eval_cmd->add_option("--input", eval_inputs,
                       "name=ciphertext-file binding (no key needed)");
  eval_cmd->add_option("--out", eval_out)->required();
  eval_seed.attach(*eval_cmd);

  // tamper-demo
  std::string tamper_key;
  std::size_t tamper_trials = 1000;
  std::string tamper_policy = "strict";
  SeedOption tamper_seed;
  auto* tamper_cmd = app.add_subcommand(
      "tamper-demo", "Measure how often single-coefficient edits are caught");
  tamper_cmd->add_option("--key", tamper_key)->required();
  tamper_cmd->add_option("--trials", tamper_trials);
  tamper_cmd->add_option("--policy", tamper_policy)
      ->check(CLI::IsMember({"paper", "strict"}));
  tamper_seed.attach(*tamper_cmd);

  // bench
  std::vector<std::size_t> bench_bits{16, 32};
  std::size_t bench_trials = 5;
  std::string bench_out;
  SeedOption bench_seed;
  auto* bench_cmd = app.add_subcommand("bench", "Time the scheme and report "
                                                "key and ciphertext sizes");
  bench_cmd->add_option("--bits-list", bench_bits)
      ->delimiter(',')
      ->check(CLI::Range(std::size_t{3}, std::size_t{8192}));
  bench_cmd->add_option("--trials", bench_trials);
  bench_cmd->add_option("--out", bench_out, "CSV file (stdout if omitted)");
  bench_seed.attach(*bench_cmd);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*keygen_cmd) return cmd_keygen(bits, key_out, keygen_seed, out);
    if (*encrypt_cmd) return cmd_encrypt(enc_key, enc_plain, enc_out, enc_seed);
    if (*decrypt_cmd) {
      return cmd_decrypt(dec_key, dec_in, parse_policy(dec_policy), out);
    }
    if (*eval_cmd) {
      return cmd_eval(eval_key, eval_expr, eval_binds, eval_inputs, eval_out,
                      eval_seed, out);
    }
    if (*tamper_cmd) {
      return cmd_tamper_demo(tamper_key, tamper_trials,
                             parse_policy(tamper_policy), tamper_seed, out);
    }
    if (*bench_cmd) {
      return cmd_bench(bench_bits, bench_trials, bench_out, bench_seed, out,
                       err);
    }
  } catch (const VerificationFailure& e) {
    err << "verification failed: " << e.what() << "\n";
    return kVerificationFailed;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const quatfhe::Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kUsageError;
}

}  // namespace quatfhe::cli
