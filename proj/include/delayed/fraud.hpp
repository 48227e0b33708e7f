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

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "delayed/params.hpp"
#include "json.hpp"

namespace delayed {

using PublicKey = std::array<std::uint8_t, 32>;
using TxId = std::array<std::uint8_t, 32>;
using Signature = std::array<std::uint8_t, 64>;

struct SecretSeed {
  std::array<std::uint8_t, 32> bytes{};
  bool operator==(const SecretSeed&) const = default;
};

struct KeyPair {
  SecretSeed seed;
  PublicKey public_key{};
};

struct Outpoint {
  std::uint64_t value = 0;
  auto operator<=>(const Outpoint&) const = default;
};

/// A signed spend of one outpoint. Ed25519 signatures are deterministic, so
/// identical inputs produce byte-identical transactions.
struct Transaction {
  TxId tx_id{};
  PublicKey signer{};
  Outpoint spent_output;
  double amount = 0.0;
  Signature signature{};

  bool operator==(const Transaction&) const = default;
};

/// Evidence that `accused` signed two different transactions spending the
/// same outpoint.
struct FraudProof {
  Transaction tx_a;
  Transaction tx_b;
  PublicKey accused{};
  PublicKey reporter{};
  Round round_submitted = 0;

  bool operator==(const FraudProof&) const = default;
};

PublicKey public_key_for(const SecretSeed& seed);

/// Deterministic per-identity key material for simulations: the same
/// (master, serial) pair always yields the same key pair.
KeyPair derive_keypair(std::uint64_t master_seed, std::uint64_t serial);

/// Throws std::invalid_argument when `seed` does not belong to `signer` or
/// the amount is not positive.
Transaction sign_transaction(const SecretSeed& seed, const PublicKey& signer,
                             Outpoint spent_output, double amount);

/// Checks the tx id binding and the signature.
bool verify_transaction(const Transaction& tx);

/// Same signer, same outpoint, different transactions. Signatures are not
/// checked here.
bool detect_conflict(const Transaction& a, const Transaction& b);

/// Never throws; malformed proofs are simply rejected.
bool verify_fraud_proof(const FraudProof& proof);

std::string to_hex(std::span<const std::uint8_t> bytes);
template <std::size_t N>
std::string to_hex(const std::array<std::uint8_t, N>& bytes) {
  return to_hex(std::span<const std::uint8_t>(bytes.data(), N));
}
/// Throws std::invalid_argument on bad length or digits.
template <std::size_t N>
std::array<std::uint8_t, N> from_hex(std::string_view hex);

nlohmann::ordered_json to_json(const Transaction& tx);
Transaction transaction_from_json(const nlohmann::ordered_json& j);

/// Canonical field order: accused, reporter, round, tx_a, tx_b.
nlohmann::ordered_json to_json(const FraudProof& proof);
FraudProof fraud_proof_from_json(const nlohmann::ordered_json& j);

}  // namespace delayed
