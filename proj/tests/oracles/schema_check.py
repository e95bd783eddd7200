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
"""Validates every line of JSONL manifests against the manifest schema."""

import json
import sys

import jsonschema


def main(argv):
  if len(argv) < 3:
    sys.stderr.write("usage: schema_check.py SCHEMA MANIFEST...\n")
    return 2
  with open(argv[1], encoding="utf-8") as f:
    schema = json.load(f)
  jsonschema.Draft202012Validator.check_schema(schema)
  validator = jsonschema.Draft202012Validator(schema)
  bad = 0
  for path in argv[2:]:
    with open(path, encoding="utf-8") as f:
      for n, line in enumerate(f, 1):
        if not line.strip():
          continue
        doc = json.loads(line)
        if n > 1 and "manifest" in doc:
          print(f"{path}:{n}: header must be the first line")
          bad += 1
        for e in validator.iter_errors(doc):
          print(f"{path}:{n}: {e.message}")
          bad += 1
  return 1 if bad else 0


if __name__ == "__main__":
  sys.exit(main(sys.argv))
