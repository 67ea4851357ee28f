// Key and ciphertext documents.
//
//   {"format_version":1,"role":"ciphertext","N":"<hex>","C":[[a,b,c,d],...]}
//   {"format_version":1,"role":"secret-key","N":"<hex>",
//    "K":[...],"K_inv":[...],"k1":[...],"k1_inv":[...]}
//
// Matrices are row-major lists of quaternions, each quaternion a list of four
// lowercase hex strings zero-padded to residue_hex_width(). Output is compact
// JSON so re-serialization is byte-exact; readers ignore whitespace.

#include <json.hpp>

#include <vector>

#include "quatfhe/errors.hpp"
#include "quatfhe/scheme.hpp"

namespace quatfhe {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::size_t kCiphertextResidues = 64;
constexpr std::size_t kKeyResidues = 2 * (16 + 4) * 4;
constexpr std::size_t kResidueFraming = 3;
constexpr std::size_t kHeaderAllowance = 128;

constexpr const char* kRoleKey = "secret-key";
constexpr const char* kRoleCiphertext = "ciphertext";

Json matrix_to_json(const QMatrix& m, std::size_t width) {
  Json rows = Json::array();
  for (const Quaternion& q : m.entries()) {
    Json coeffs = Json::array();
    for (const BigInt& c : q.coefficients()) coeffs.push_back(to_hex(c, width));
    rows.push_back(std::move(coeffs));
  }
  return rows;
}

Json header(const SchemeParams& params, const char* role) {
  Json doc = Json::object();
  doc["format_version"] = kFormatVersion;
  doc["role"] = role;
  doc["N"] = to_hex(params.n());
  return doc;
}

Json parse_document(std::string_view bytes, const char* role) {
  Json doc;
  try {
    doc = Json::parse(bytes.begin(), bytes.end());
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string("malformed document: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("document is not an object");
  const auto version = doc.find("format_version");
  if (version == doc.end() || !version->is_number_integer()) {
    throw FormatError("missing format_version");
  }
  if (version->get<long long>() != kFormatVersion) {
    throw FormatError("unsupported format_version " + version->dump());
  }
  const auto doc_role = doc.find("role");
  if (doc_role == doc.end() || !doc_role->is_string() ||
      doc_role->get<std::string>() != role) {
    throw FormatError(std::string("expected role \"") + role + "\"");
  }
  return doc;
}

const Json& field(const Json& doc, const char* name) {
  const auto it = doc.find(name);
  if (it == doc.end()) throw FormatError(std::string("missing field ") + name);
  return *it;
}

SchemeParams params_from(const Json& doc) {
  const Json& n = field(doc, "N");
  if (!n.is_string()) throw FormatError("N must be a hex string");
  const auto value = parse_hex(n.get<std::string>());
  if (!value || *value < 2) throw FormatError("N is not valid lowercase hex");
  return SchemeParams(*value);
}

QMatrix matrix_from(const Json& doc, const char* name, std::size_t dim,
                    const Modulus& modulus) {
  const Json& rows = field(doc, name);
  if (!rows.is_array() || rows.size() != dim * dim) {
    throw FormatError(std::string(name) + " must hold " +
                      std::to_string(dim * dim) + " quaternions");
  }
  std::vector<Quaternion> entries;
  entries.reserve(dim * dim);
  for (const Json& q : rows) {
    if (!q.is_array() || q.size() != 4) {
      throw FormatError(std::string(name) + ": quaternion needs 4 residues");
    }
    std::array<BigInt, 4> c;
    for (std::size_t t = 0; t < 4; ++t) {
      if (!q[t].is_string()) {
        throw FormatError(std::string(name) + ": residue must be a string");
      }
      auto v = parse_hex(q[t].get<std::string>());
      if (!v) throw FormatError(std::string(name) + ": invalid hex residue");
      if (*v >= modulus.value()) {
        throw FormatError(std::string(name) + ": residue not reduced mod N^2");
      }
      c[t] = std::move(*v);
    }
    entries.emplace_back(modulus, c[0], c[1], c[2], c[3]);
  }
  return QMatrix(dim, modulus, std::move(entries));
}

}  // namespace

std::size_t residue_hex_width(const SchemeParams& params) {
  return 2 * ((params.n_squared().bits() + 7) / 8);
}

std::size_t ciphertext_layout_bytes(const SchemeParams& params) {
  return kCiphertextResidues * (residue_hex_width(params) + kResidueFraming) +
         kHeaderAllowance;
}

std::size_t key_layout_bytes(const SchemeParams& params) {
  return kKeyResidues * (residue_hex_width(params) + kResidueFraming) +
         kHeaderAllowance;
}

std::string serialize_key(const SecretKey& sk) {
  const std::size_t width = residue_hex_width(sk.params());
  Json doc = header(sk.params(), kRoleKey);
  doc["K"] = matrix_to_json(sk.big_k(), width);
  doc["K_inv"] = matrix_to_json(sk.big_k_inv(), width);
  doc["k1"] = matrix_to_json(sk.k1(), width);
  doc["k1_inv"] = matrix_to_json(sk.k1_inv(), width);
  return doc.dump();
}

SecretKey deserialize_key(std::string_view bytes) {
  const Json doc = parse_document(bytes, kRoleKey);
  SchemeParams params = params_from(doc);
  const Modulus& n2 = params.n_squared();
  QMatrix big_k = matrix_from(doc, "K", 4, n2);
  QMatrix big_k_inv = matrix_from(doc, "K_inv", 4, n2);
  QMatrix k1 = matrix_from(doc, "k1", 2, n2);
  QMatrix k1_inv = matrix_from(doc, "k1_inv", 2, n2);
  return SecretKey(std::move(params), std::move(big_k), std::move(big_k_inv),
                   std::move(k1), std::move(k1_inv));
}

std::string serialize_ct(const Ciphertext& ct) {
  Json doc = header(ct.params(), kRoleCiphertext);
  doc["C"] = matrix_to_json(ct.body(), residue_hex_width(ct.params()));
  return doc.dump();
}

Ciphertext deserialize_ct(std::string_view bytes) {
  const Json doc = parse_document(bytes, kRoleCiphertext);
  SchemeParams params = params_from(doc);
  QMatrix body = matrix_from(doc, "C", 4, params.n_squared());
  return Ciphertext(std::move(params), std::move(body));
}

}  // namespace quatfhe
