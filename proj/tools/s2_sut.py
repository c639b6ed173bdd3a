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

"""The stateless system c = 2a + b, d = a + 10 - b over the stdio protocol."""

import json
import sys

for line in sys.stdin:
    msg = json.loads(line)
    if msg["cmd"] == "step":
        a, b = msg["inputs"]["a"], msg["inputs"]["b"]
        print(json.dumps({"outputs": {"c": 2 * a + b, "d": a + 10 - b}}), flush=True)
