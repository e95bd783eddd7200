#!/usr/bin/env python3
# Copyright 2026 The scenedesc Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Recounts token frequencies of a manifest without the C++ tokenizer.

  vocab_recount.py MANIFEST --min-freq 5              print the golden text
  vocab_recount.py MANIFEST --min-freq 5 --check FILE exit 1 on mismatch
"""

import argparse
import collections
import json
import re
import sys
import unicodedata

SPLIT = ",.'\"[]-;:!?()/‘’“”–—"
TOKEN = re.compile("[" + re.escape(SPLIT) + "]|[^\\s" + re.escape(SPLIT) + "]+")


def tokens(text):
  return TOKEN.findall(unicodedata.normalize("NFC", text).lower())


def recount(path):
  counts = collections.Counter()
  with open(path, encoding="utf-8") as f:
    for line in f:
      if not line.strip():
        continue
      rec = json.loads(line)
      if "manifest" in rec or rec.get("category") != "seen":
        continue
      for d in rec["descriptions"]:
        counts.update(tokens(d))
  return counts


def render(counts, min_freq):
  kept = sorted((t for t, n in counts.items() if n >= min_freq),
                key=lambda t: (-counts[t], t))
  out = [f"# min_frequency={min_freq} total_tokens={sum(counts.values())} "
         f"distinct={len(counts)} retained={len(kept) + 4}"]
  out += ["<start>", "<end>", "<pad>", "<unk>"]
  out += [f"{t}\t{counts[t]}" for t in kept]
  return "\n".join(out) + "\n"


def main():
  p = argparse.ArgumentParser()
  p.add_argument("manifest")
  p.add_argument("--min-freq", type=int, default=5)
  p.add_argument("--check")
  a = p.parse_args()
  text = render(recount(a.manifest), a.min_freq)
  if a.check is None:
    sys.stdout.write(text)
    return 0
  with open(a.check, encoding="utf-8") as f:
    golden = f.read()
  if golden != text:
    sys.stderr.write("recount differs from " + a.check + "\n")
    return 1
  return 0


if __name__ == "__main__":
  sys.exit(main())
