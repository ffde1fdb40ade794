# Copyright 2026 The Unistable Authors
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

import json
import logging
import sys

from unistable.harness import config_from_dict, report_json, run_sweep

logging.basicConfig(level=logging.INFO)

with open("erm_n100.json", encoding="utf-8") as f:
    doc = json.load(f)

config = config_from_dict({**doc, "beta_probes": 200})
_, report = run_sweep(config, workers=4)

sys.stdout.write(report_json(report))
print(
    f"E[delta^2] = {report.mean_delta_sq:.6g}, "
    f"beta = {report.beta:.6g}, all passed: {report.all_passed}"
)
