#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "ramop/cache.hpp"
#include "ramop/graph.hpp"
#include "ramop/ram.hpp"

using namespace ramop;
namespace fs = std::filesystem;

class CacheTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("ramop-cache-test-" + std::to_string(::getpid()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(CacheTest, OperadRoundTrip) {
  auto cold = ram::make_quotient("ram", {}, dir_);
  const auto a = cold->component(4);
  EXPECT_GE(cache::info(dir_).records, 2u);
  auto warm = ram::make_quotient("ram", {}, dir_);
  const auto b = warm->component(4);
  EXPECT_EQ(a->basis, b->basis);
  EXPECT_EQ(a->dims, b->dims);
  EXPECT_EQ(a->ideal_rank(), b->ideal_rank());
}

TEST_F(CacheTest, GraphRoundTripAndClear) {
  graph::GraphQuotient cold(graph::r_presentation(), {}, dir_);
  const auto a = cold.component(4);
  graph::GraphQuotient warm(graph::r_presentation(), {}, dir_);
  const auto b = warm.component(4);
  EXPECT_EQ(a->basis, b->basis);
  EXPECT_EQ(a->dims, b->dims);
  std::ofstream(dir_ / "unrelated.txt") << "keep";
  const auto before = cache::info(dir_).records;
  EXPECT_EQ(cache::clear(dir_), before);
  EXPECT_EQ(cache::info(dir_).records, 0u);
  EXPECT_TRUE(fs::exists(dir_ / "unrelated.txt"));
}

TEST_F(CacheTest, CorruptRecordIsIgnored) {
  auto cold = ram::make_quotient("ram", {}, dir_);
  const auto a = cold->component(3);
  for (const auto& e : fs::directory_iterator(dir_)) std::ofstream(e.path(), std::ios::trunc) << "garbage\n";
  auto warm = ram::make_quotient("ram", {}, dir_);
  EXPECT_EQ(warm->component(3)->basis, a->basis);
}

TEST_F(CacheTest, PresentationEditChangesKey) {
  EXPECT_NE(cache::record_path(dir_, "operad", ram::presentation("ram").hash(), 3, "-"),
            cache::record_path(dir_, "operad", ram::presentation("poisson").hash(), 3, "-"));
  EXPECT_NE(graph::r_presentation(true).hash(), graph::r_presentation(false).hash());
}
