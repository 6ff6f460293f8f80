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

// Writes a synthetic task pair to a directory for manual experiments.
//   synth_dump DIR [SEED]

#include <cstdlib>
#include <exception>
#include <iostream>

#include "support/synthetic.h"

int main(int argc, char **argv) {
  if (argc < 2) {
    std::cerr << "usage: synth_dump DIR [SEED]\n";
    return 2;
  }
  std::string dir = argv[1];
  seqtag::testing::SyntheticPairOptions o;
  if (argc > 2) o.seed = std::strtoull(argv[2], nullptr, 10);
  try {
    seqtag::testing::SyntheticPair p = seqtag::testing::MakeSyntheticPair(o);
    seqtag::WriteConllFile(dir + "/source.train", p.source.train);
    seqtag::WriteConllFile(dir + "/source.dev", p.source.dev);
    seqtag::WriteConllFile(dir + "/target.train", p.target.train);
    seqtag::WriteConllFile(dir + "/target.dev", p.target.dev);
    seqtag::testing::WriteTextFile(dir + "/map.tsv",
                                   seqtag::testing::MappingText(p));
  } catch (const std::exception &e) {
    std::cerr << "synth_dump: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
