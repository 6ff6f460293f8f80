// Copyright 2026 The Seqtag Authors.
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

// Runs the seqtag command-line binary end to end.

#include <sys/wait.h>

#include <cstdlib>
#include <string>

#include "gtest/gtest.h"
#include "seqtag/corpus.h"
#include "support/synthetic.h"

#ifndef SEQTAG_CLI
#error "SEQTAG_CLI must name the seqtag binary"
#endif

namespace {

using seqtag::testing::ReadTextFile;
using seqtag::testing::TempDir;

int RunCli(const std::string &args) {
  std::string cmd = std::string(SEQTAG_CLI) + " " + args + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    seqtag::testing::SyntheticPairOptions o;
    o.source_train = 40;
    o.target_train = 20;
    o.source_dev = 10;
    o.target_dev = 10;
    o.num_tags = 2;
    o.suffixes_per_tag = 2;
    auto pair = seqtag::testing::MakeSyntheticPair(o);
    seqtag::WriteConllFile(dir_.File("s.train"), pair.source.train);
    seqtag::WriteConllFile(dir_.File("s.dev"), pair.source.dev);
    seqtag::WriteConllFile(dir_.File("t.train"), pair.target.train);
    seqtag::WriteConllFile(dir_.File("t.dev"), pair.target.dev);
  }

  std::string TrainArgs(const std::string &tag) {
    return "train --train " + dir_.File("t.train") + " --dev " +
           dir_.File("t.dev") + " --source-train " + dir_.File("s.train") +
           " --source-dev " + dir_.File("s.dev") +
           " --char-emb-dim 3 --word-emb-dim 3 --char-hidden 3"
           " --word-hidden 3 --max-steps 20 --eval-interval 10"
           " --batch-size 4 --checkpoint " + dir_.File(tag + ".ck") +
           " --log " + dir_.File(tag + ".log");
  }

  TempDir dir_;
};

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(RunCli(""), 2);
  EXPECT_EQ(RunCli("train"), 2);
  EXPECT_EQ(RunCli("train --bogus 1 --checkpoint x"), 2);
  EXPECT_EQ(RunCli(TrainArgs("bad") + " --batch-size 0"), 2);
  EXPECT_EQ(RunCli(TrainArgs("bad") + " --arch T-Q"), 2);
}

TEST_F(CliTest, TAWithoutMappingExitsTwo) {
  EXPECT_EQ(RunCli(TrainArgs("ta") + " --arch T-A"), 2);
}

TEST_F(CliTest, MissingInputExitsOne) {
  EXPECT_EQ(RunCli("eval --checkpoint " + dir_.File("nope.ck") + " --test " +
                dir_.File("t.dev")),
            1);
}

TEST_F(CliTest, TrainIsReproducible) {
  ASSERT_EQ(RunCli(TrainArgs("a") + " --arch T-B --seed 4"), 0);
  ASSERT_EQ(RunCli(TrainArgs("b") + " --arch T-B --seed 4"), 0);
  EXPECT_EQ(ReadTextFile(dir_.File("a.ck")), ReadTextFile(dir_.File("b.ck")));
  EXPECT_EQ(ReadTextFile(dir_.File("a.log")), ReadTextFile(dir_.File("b.log")));
  EXPECT_FALSE(ReadTextFile(dir_.File("a.log")).empty());
}

TEST_F(CliTest, EvalAndPredictFromCheckpoint) {
  ASSERT_EQ(RunCli(TrainArgs("m") + " --arch T-C"), 0);
  std::string ck = dir_.File("m.ck");
  ASSERT_EQ(RunCli("eval --checkpoint " + ck + " --test " + dir_.File("t.dev") +
                " --out " + dir_.File("report")),
            0);
  EXPECT_TRUE(ReadTextFile(dir_.File("report")).starts_with("accuracy\t"));
  ASSERT_EQ(RunCli("eval --checkpoint " + ck + " --view source --test " +
                dir_.File("s.dev") + " --out " + dir_.File("sreport")),
            0);
  ASSERT_EQ(RunCli("predict --checkpoint " + ck + " --input " + dir_.File("t.dev") +
                " --out " + dir_.File("pred")),
            0);
  EXPECT_FALSE(ReadTextFile(dir_.File("pred")).empty());
}

TEST_F(CliTest, SplitAndSubsample) {
  std::string prefix = dir_.File("parts");
  ASSERT_EQ(RunCli("split " + dir_.File("t.train") + " --seed 2 --out " + prefix +
                " > " + dir_.File("counts")),
            0);
  EXPECT_EQ(ReadTextFile(dir_.File("counts")), "train\t16\ndev\t2\ntest\t2\n");
  EXPECT_EQ(seqtag::ReadConll(prefix + ".dev.conll").size(), 2u);
  ASSERT_EQ(RunCli("subsample " + dir_.File("t.train") + " --rate 0.5 --out " +
                dir_.File("half")),
            0);
  EXPECT_EQ(seqtag::ReadConll(dir_.File("half")).size(), 10u);
  EXPECT_EQ(RunCli("subsample " + dir_.File("t.train") + " --rate 2 --out " +
                dir_.File("half")),
            2);
}

}  // namespace
