#!/usr/bin/env python3
# Copyright 2026 The ARN Simulator Authors
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
"""Regenerates office3.json.

T-shaped corridor C with the base room B hanging below its middle. Loading
rooms R1 and R3 sit at the two ends, R2 at the top of the vertical arm. Each
room's own delivery is short (< 150 s planned); fetching from another room
is long.
"""
import json
import pathlib

ARM = 25       # cells from the centre to each end of the horizontal corridor
STEM = 18      # length of the vertical corridor arm

W = 2 * ARM + 7
CX = W // 2
YC = 8 + STEM  # top row of the horizontal corridor
H = YC + 9

rooms = {
    "C": [(x, y) for x in range(1, W - 1) for y in (YC, YC + 1)]
    + [(x, y) for x in (CX - 1, CX) for y in range(8, YC)],
    "R1": [(x, y) for x in range(1, 7) for y in range(YC - 7, YC - 1)],
    "R2": [(x, y) for x in range(CX - 3, CX + 3) for y in range(1, 7)],
    "R3": [(x, y) for x in range(W - 7, W - 1) for y in range(YC - 7, YC - 1)],
    "B": [(x, y) for x in range(CX - 4, CX + 5) for y in range(YC + 3, YC + 8)],
}
doors = [
    {"id": "d1", "cell": [3, YC - 1], "connects": ["C", "R1"], "kind": "robot_openable", "close_delay_s": 30},
    {"id": "d2", "cell": [CX, 7], "connects": ["C", "R2"], "kind": "robot_openable", "close_delay_s": 30},
    {"id": "d3", "cell": [W - 4, YC - 1], "connects": ["C", "R3"], "kind": "robot_openable", "close_delay_s": 30},
    {"id": "db", "cell": [CX, YC + 2], "connects": ["C", "B"], "kind": "human_operated", "close_delay_s": 30},
]
stations = [
    {"id": "L1", "cell": [1, YC - 7], "object": "O1"},
    {"id": "L2", "cell": [CX - 3, 1], "object": "O2"},
    {"id": "L3", "cell": [W - 2, YC - 7], "object": "O3"},
    {"id": "BS", "cell": [CX, YC + 6], "object": None},
]

claimed = {c for cells in rooms.values() for c in cells} | {tuple(d["cell"]) for d in doors}
walls = [[x, y] for y in range(H) for x in range(W) if (x, y) not in claimed]
doc = {
    "width": W,
    "height": H,
    "walls": walls,
    "rooms": {k: [list(c) for c in v] for k, v in rooms.items()},
    "doors": doors,
    "stations": stations,
    "base_station": "BS",
}
out = pathlib.Path(__file__).with_name("office3.json")
out.write_text(json.dumps(doc, separators=(",", ":")) + "\n")
