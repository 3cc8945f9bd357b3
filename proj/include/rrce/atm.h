// Copyright 2026 The RRCE Authors
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

// Departure/arrival runway-queue games.
//
// Each queue decides per runway whether to occupy it or yield. With r runways
// there are m = 2^r actions. Action k encodes the yields in binary with runway
// 0 as the most significant bit, so for r = 2 the order is
// (Occupy, Occupy), (Occupy, Yield), (Yield, Occupy), (Yield, Yield).
//
// Against one opponent, queue i pays per runway: delta if both occupy it, rho
// if it yields, nothing if it occupies alone. Runways add up and the whole
// matrix scales with the queue's arrival rate.

#ifndef RRCE_ATM_H_
#define RRCE_ATM_H_

#include <string>
#include <vector>

#include "rrce/game.h"

namespace rrce {

inline constexpr double kDefaultYieldPenalty = 5.0;        // minutes per round
inline constexpr double kDefaultCollisionPenalty = 500.0;  // 100 * rho
inline constexpr double kDefaultRateLow = 0.5;
inline constexpr double kDefaultRateHigh = 2.0;

struct AtmConfig {
  int num_queues = 2;
  int runways = 1;
  std::vector<double> rates;  // aircraft per round, one per queue
  double rho = kDefaultYieldPenalty;
  double delta = kDefaultCollisionPenalty;

  int num_actions() const { return 1 << runways; }
  // Throws InvalidConfig.
  void Validate() const;
};

struct RunwayAction {
  std::vector<bool> occupies;  // per runway

  std::string ToString() const;  // e.g. "(O,Y)"
};

// All 2^r actions in index order.
std::vector<RunwayAction> RunwayActionSpace(int runways);

bool Occupies(int action, int runway, int runways);

// Single-opponent cost of action a against action b for a unit rate.
double RunwayPairCost(int a, int b, int runways, double rho, double delta);

Game BuildQueueGame(const AtmConfig& config);

// n independent draws, uniform on [low, high].
std::vector<double> SampleRates(int num_queues, Rng& rng,
                                double low = kDefaultRateLow,
                                double high = kDefaultRateHigh);

// Chicken game C^{12} = C^{21} = [[delta, 0], [rho, rho]].
Game TwoPlayerSingleRunway(double delta = kDefaultCollisionPenalty,
                           double rho = kDefaultYieldPenalty);

}  // namespace rrce

#endif  // RRCE_ATM_H_
