// Copyright 2026 The Ridechain Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <memory>

#include "spdlog/spdlog.h"

namespace ridechain::log {

inline constexpr const char* kLevelEnv = "RIDECHAIN_LOG";

// Shared stderr logger; level comes from RIDECHAIN_LOG
// (trace, debug, info, warn, error, critical, off), default warn.
spdlog::logger& logger();

}  // namespace ridechain::log

#define RIDECHAIN_LOG_DEBUG(...) ::ridechain::log::logger().debug(__VA_ARGS__)
#define RIDECHAIN_LOG_INFO(...) ::ridechain::log::logger().info(__VA_ARGS__)
#define RIDECHAIN_LOG_WARN(...) ::ridechain::log::logger().warn(__VA_ARGS__)
