// Copyright 2026 The r3eval Authors
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

#include "r3/commands.hpp"
#include "r3/ingest.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>
#include <sys/resource.h>

#include <fstream>
#include <ostream>
#include <streambuf>

namespace r3
{
namespace
{

long max_rss_kib()
{
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  return usage.ru_maxrss;
}

class NullBuffer : public std::streambuf
{
protected:
  int_type overflow(int_type c) override { return traits_type::not_eof(c); }
  std::streamsize xsputn(const char *, std::streamsize n) override { return n; }
};

// Ranking a file several times the size of the allowed memory growth must
// stay within that growth: only one frame is resident at a time.
TEST(Streaming, RankingMemoryIndependentOfFileSize)
{
  const auto dir = test::temp_dir("streaming");
  const auto path = dir / "big.frames.jsonl";

  ScenarioSpec spec;
  spec.kind = ScenarioKind::crossing;
  spec.frames = 500;
  spec.params["background"] = 12;
  const GeneratedScenario g = generate(spec);
  std::string block;
  for (const Frame & f : g.frames) block += frame_to_json(f) + "\n";
  {
    std::ofstream out(path, std::ios::binary);
    // Frame ids must be unique, so each repetition gets a distinct prefix.
    for (int rep = 0; rep < 80; ++rep) {
      std::string copy = block;
      const std::string from = "\"frame_id\":\"crossing-";
      const std::string to = "\"frame_id\":\"r" + std::to_string(rep) + "-crossing-";
      for (std::size_t pos = copy.find(from); pos != std::string::npos; pos = copy.find(from, pos + to.size())) {
        copy.replace(pos, from.size(), to);
      }
      out << copy;
    }
  }
  const auto file_size = std::filesystem::file_size(path);
  ASSERT_GT(file_size, 100u << 20);
  block.clear();
  block.shrink_to_fit();

  const long before = max_rss_kib();
  NullBuffer sink;
  std::ostream out(&sink);
  std::ifstream in(path, std::ios::binary);
  EXPECT_EQ(rank_stream(in, out, RiskParams{}), 40000u);
  const long growth_kib = max_rss_kib() - before;
  std::filesystem::remove_all(dir);

  RecordProperty("file_mib", static_cast<int>(file_size >> 20));
  RecordProperty("rss_growth_kib", static_cast<int>(growth_kib));
  EXPECT_LT(growth_kib * 1024, static_cast<long>(file_size / 8))
    << "file " << (file_size >> 20) << " MiB, growth " << growth_kib << " KiB";
}

}  // namespace
}  // namespace r3
