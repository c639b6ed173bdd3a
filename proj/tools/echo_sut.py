#!/usr/bin/env python3
# Copyright 2026 The stlcov Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Identity system for the external SUT protocol: each output copies an input.

  echo_sut.py c=a d=b        # c := a, d := b
  echo_sut.py --short 2 c=a  # exit after two steps of an episode
"""

import argparse
import json
import sys


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--short", type=int, default=None)
    ap.add_argument("maps", nargs="*", default=["c=a"])
    args = ap.parse_args()
    pairs = [m.split("=", 1) for m in (args.maps or ["c=a"])]

    steps = 0
    for line in sys.stdin:
        msg = json.loads(line)
        if msg["cmd"] == "reset":
            steps = 0
        elif msg["cmd"] == "step":
            if args.short is not None and steps >= args.short:
                return
            steps += 1
            out = {o: msg["inputs"][i] for o, i in pairs}
            print(json.dumps({"outputs": out}), flush=True)


if __name__ == "__main__":
    main()
