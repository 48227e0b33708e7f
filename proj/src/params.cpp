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

#include "delayed/params.hpp"

#include <cmath>

namespace delayed {

namespace {

void require(bool ok, const char* field, const char* message) {
  if (!ok) throw ConfigError(field, std::string(field) + ": " + message);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

double ProtocolParams::reward_at(Round round) const {
  if (alpha_decay == 0.0) return alpha;
  return alpha * std::exp(-alpha_decay * static_cast<double>(round));
}

double ProtocolParams::gamma_for(std::uint32_t dropouts) const {
  if (gamma0 == 0.0) return 0.0;
  return gamma0 * std::pow(decay_growth, static_cast<double>(dropouts));
}

double ProtocolParams::discount_or_throw() const {
  if (!discount) throw ConfigError("discount", "discount: not set");
  return *discount;
}

ValidatedParams validate_params(const ProtocolParams& raw) {
  require(finite(raw.d) && raw.d >= 0.0, "d", "must be >= 0");
  require(finite(raw.gamma0) && raw.gamma0 >= 0.0, "gamma0", "must be >= 0");
  require(finite(raw.decay_growth) && raw.decay_growth >= 1.0, "decay_growth",
          "must be >= 1");
  require(finite(raw.alpha) && raw.alpha > 0.0, "alpha", "must be > 0");
  require(finite(raw.alpha_decay) && raw.alpha_decay >= 0.0, "alpha_decay",
          "must be >= 0");
  require(finite(raw.lambda) && raw.lambda > 0.0, "lambda", "must be > 0");
  require(finite(raw.delta_t) && raw.delta_t > 0.0, "delta_t", "must be > 0");
  require(raw.discount.has_value(), "discount", "not set");
  require(finite(*raw.discount) && *raw.discount > 0.0 && *raw.discount < 1.0,
          "discount", "discount out of range (0, 1)");
  require(finite(raw.reporter_share) && raw.reporter_share >= 0.0 &&
              raw.reporter_share <= 1.0,
          "reporter_share", "must lie in [0, 1]");
  require(finite(raw.mining_cost) && raw.mining_cost >= 0.0, "mining_cost",
          "must be >= 0");

  ValidatedParams out;
  out.params = raw;
  out.legacy_mode = raw.d == 0.0 && raw.gamma0 == 0.0;
  return out;
}

}  // namespace delayed
