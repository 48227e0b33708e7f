// Copyright 2026 The delayed-pow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "delayed/fraud.hpp"

#include <sodium.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <vector>

namespace delayed {

namespace {

constexpr std::string_view kTxDomain = "delayed/tx/v1";
constexpr std::string_view kKeyDomain = "delayed/key/v1";

void ensure_sodium() {
  static const bool ready = [] { return sodium_init() >= 0; }();
  if (!ready) throw std::runtime_error("libsodium initialisation failed");
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::vector<std::uint8_t> payload(const PublicKey& signer, Outpoint out,
                                  double amount) {
  std::vector<std::uint8_t> msg(kTxDomain.begin(), kTxDomain.end());
  msg.insert(msg.end(), signer.begin(), signer.end());
  put_u64(msg, out.value);
  put_u64(msg, std::bit_cast<std::uint64_t>(amount));
  return msg;
}

TxId hash_payload(const std::vector<std::uint8_t>& msg) {
  TxId id{};
  crypto_hash_sha256(id.data(), msg.data(), msg.size());
  return id;
}

std::vector<std::uint8_t> signed_message(const std::vector<std::uint8_t>& msg,
                                         const TxId& id) {
  std::vector<std::uint8_t> full = msg;
  full.insert(full.end(), id.begin(), id.end());
  return full;
}

}  // namespace

PublicKey public_key_for(const SecretSeed& seed) {
  ensure_sodium();
  PublicKey pk{};
  std::array<std::uint8_t, crypto_sign_SECRETKEYBYTES> sk{};
  crypto_sign_seed_keypair(pk.data(), sk.data(), seed.bytes.data());
  sodium_memzero(sk.data(), sk.size());
  return pk;
}

KeyPair derive_keypair(std::uint64_t master_seed, std::uint64_t serial) {
  ensure_sodium();
  std::vector<std::uint8_t> in(kKeyDomain.begin(), kKeyDomain.end());
  put_u64(in, master_seed);
  put_u64(in, serial);
  KeyPair kp;
  crypto_generichash(kp.seed.bytes.data(), kp.seed.bytes.size(), in.data(),
                     in.size(), nullptr, 0);
  kp.public_key = public_key_for(kp.seed);
  return kp;
}

Transaction sign_transaction(const SecretSeed& seed, const PublicKey& signer,
                             Outpoint spent_output, double amount) {
  ensure_sodium();
  if (!(amount > 0.0) || !std::isfinite(amount))
    throw std::invalid_argument("transaction amount must be positive");

  PublicKey pk{};
  std::array<std::uint8_t, crypto_sign_SECRETKEYBYTES> sk{};
  crypto_sign_seed_keypair(pk.data(), sk.data(), seed.bytes.data());
  if (pk != signer) {
    sodium_memzero(sk.data(), sk.size());
    throw std::invalid_argument("secret seed does not belong to signer");
  }

  Transaction tx;
  tx.signer = signer;
  tx.spent_output = spent_output;
  tx.amount = amount;
  const auto msg = payload(signer, spent_output, amount);
  tx.tx_id = hash_payload(msg);
  const auto full = signed_message(msg, tx.tx_id);
  crypto_sign_detached(tx.signature.data(), nullptr, full.data(), full.size(),
                       sk.data());
  sodium_memzero(sk.data(), sk.size());
  return tx;
}

bool verify_transaction(const Transaction& tx) {
  ensure_sodium();
  if (!(tx.amount > 0.0) || !std::isfinite(tx.amount)) return false;
  const auto msg = payload(tx.signer, tx.spent_output, tx.amount);
  if (hash_payload(msg) != tx.tx_id) return false;
  const auto full = signed_message(msg, tx.tx_id);
  return crypto_sign_verify_detached(tx.signature.data(), full.data(),
                                     full.size(), tx.signer.data()) == 0;
}

bool detect_conflict(const Transaction& a, const Transaction& b) {
  return a.signer == b.signer && a.spent_output == b.spent_output &&
         a.tx_id != b.tx_id;
}

bool verify_fraud_proof(const FraudProof& proof) {
  try {
    return proof.accused == proof.tx_a.signer &&
           detect_conflict(proof.tx_a, proof.tx_b) &&
           verify_transaction(proof.tx_a) && verify_transaction(proof.tx_b);
  } catch (...) {
    return false;
  }
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  std::string out(bytes.size() * 2 + 1, '\0');
  sodium_bin2hex(out.data(), out.size(), bytes.data(), bytes.size());
  out.pop_back();
  return out;
}

template <std::size_t N>
std::array<std::uint8_t, N> from_hex(std::string_view hex) {
  std::array<std::uint8_t, N> out{};
  std::size_t len = 0;
  const char* end = nullptr;
  if (hex.size() != 2 * N ||
      sodium_hex2bin(out.data(), N, hex.data(), hex.size(), nullptr, &len,
                     &end) != 0 ||
      len != N)
    throw std::invalid_argument("bad hex field");
  return out;
}

template std::array<std::uint8_t, 32> from_hex<32>(std::string_view);
template std::array<std::uint8_t, 64> from_hex<64>(std::string_view);

nlohmann::ordered_json to_json(const Transaction& tx) {
  nlohmann::ordered_json j;
  j["tx_id"] = to_hex(tx.tx_id);
  j["signer"] = to_hex(tx.signer);
  j["spent_output"] = tx.spent_output.value;
  j["amount"] = tx.amount;
  j["signature"] = to_hex(tx.signature);
  return j;
}

Transaction transaction_from_json(const nlohmann::ordered_json& j) {
  Transaction tx;
  tx.tx_id = from_hex<32>(j.at("tx_id").get<std::string>());
  tx.signer = from_hex<32>(j.at("signer").get<std::string>());
  tx.spent_output.value = j.at("spent_output").get<std::uint64_t>();
  tx.amount = j.at("amount").get<double>();
  tx.signature = from_hex<64>(j.at("signature").get<std::string>());
  return tx;
}

nlohmann::ordered_json to_json(const FraudProof& proof) {
  nlohmann::ordered_json j;
  j["accused"] = to_hex(proof.accused);
  j["reporter"] = to_hex(proof.reporter);
  j["round"] = proof.round_submitted;
  j["tx_a"] = to_json(proof.tx_a);
  j["tx_b"] = to_json(proof.tx_b);
  return j;
}

FraudProof fraud_proof_from_json(const nlohmann::ordered_json& j) {
  FraudProof p;
  p.accused = from_hex<32>(j.at("accused").get<std::string>());
  p.reporter = from_hex<32>(j.at("reporter").get<std::string>());
  p.round_submitted = j.at("round").get<Round>();
  p.tx_a = transaction_from_json(j.at("tx_a"));
  p.tx_b = transaction_from_json(j.at("tx_b"));
  return p;
}

}  // namespace delayed
