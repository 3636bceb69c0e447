// Copyright 2026 The rgbtfuse Authors
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

#ifndef RGBTFUSE_TESTS__SUPPORT_HPP_
#define RGBTFUSE_TESTS__SUPPORT_HPP_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "rgbtfuse/types.hpp"

namespace rgbtfuse::testing
{

class TempDir
{
public:
  explicit TempDir(const std::string & tag)
  {
    static std::uint64_t counter = 0;
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("rgbtfuse-" + tag + "-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir()
  {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir &) = delete;
  TempDir & operator=(const TempDir &) = delete;

  const std::filesystem::path & path() const { return path_; }
  std::filesystem::path operator/(const std::string & name) const { return path_ / name; }

private:
  std::filesystem::path path_;
};

// Hand-rolled generators for the property tests.
class Gen
{
public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::size_t index(std::size_t lo, std::size_t hi)
  {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  // Mostly real-valued boxes; every fourth one snapped to integers so that
  // exact threshold ties show up.
  Box box()
  {
    double x = real(0.0, 200.0);
    double y = real(0.0, 200.0);
    double w = real(0.0, 80.0);
    double h = real(0.0, 80.0);
    if (index(0, 3) == 0) {
      x = static_cast<double>(static_cast<int>(x));
      y = static_cast<double>(static_cast<int>(y));
      w = static_cast<double>(static_cast<int>(w));
      h = static_cast<double>(static_cast<int>(h));
    }
    return Box::make(x, y, w, h);
  }

  // A prediction close to `near` half of the time so that overlaps span the
  // whole [0, 1] range.
  Box box_near(const Box & near)
  {
    if (coin()) {
      return box();
    }
    return Box::make(
      near.x() + real(-20.0, 20.0), near.y() + real(-20.0, 20.0), near.w() * real(0.5, 1.5),
      near.h() * real(0.5, 1.5));
  }

  FrameTruth truth(double absent_p)
  {
    return coin(absent_p) ? FrameTruth::absent() : FrameTruth::present(box());
  }

  FramePrediction prediction(const FrameTruth & g, double absent_p)
  {
    if (coin(absent_p)) {
      return FramePrediction::absence_declared();
    }
    return FramePrediction::present(g.is_present() ? box_near(*g.box()) : box());
  }

  std::mt19937_64 & engine() { return rng_; }

private:
  std::mt19937_64 rng_;
};

inline std::string fixture(const std::string & rel) { return std::string(RGBTFUSE_FIXTURES) + "/" + rel; }

}  // namespace rgbtfuse::testing

#endif  // RGBTFUSE_TESTS__SUPPORT_HPP_
