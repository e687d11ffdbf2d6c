"""Tiny hand-written instances bundled for demos, tests, and --seed-fixtures.

All four describe close relatives of the same 4-task project on one
capacity-7 resource (demands 5, 3, 2, 4), small enough to verify every
number by hand.
"""

FIXTURE_SM = """\
************************************************************************
file with basedata            : fixture.bas
initial value random generator: 42
************************************************************************
projects                      :  1
jobs (incl. supersource/sink ):  6
horizon                       :  12
RESOURCES
  - renewable                 :  1   R
  - nonrenewable              :  0   N
  - doubly constrained        :  0   D
************************************************************************
PROJECT INFORMATION:
pronr.  #jobs rel.date duedate tardcost  MPM-Time
    1      4      0       12        0        5
************************************************************************
PRECEDENCE RELATIONS:
jobnr.    #modes  #successors   successors
   1        1          4           2   3   4   5
   2        1          1           6
   3        1          1           6
   4        1          1           6
   5        1          1           6
   6        1          0
************************************************************************
REQUESTS/DURATIONS:
jobnr. mode duration  R 1
------------------------------------------------------------------------
  1      1     0       0
  2      1     1       5
  3      1     1       3
  4      1     1       2
  5      1     2       4
  6      1     0       0
************************************************************************
RESOURCEAVAILABILITIES:
  R 1
   7
************************************************************************
"""

FIXTURE_SCH = """\
2 1 0 0
0 1 2 1 2 [0] [0]
1 1 1 2 [-2]
2 1 1 3 [3]
3 1 0
0 1 0 0
1 1 2 1
2 1 3 2
3 1 0 0
7
"""

FIXTURE_RCP = """\
6 1
7
0 0 4 2 3 4 5
1 5 1 6
1 3 1 6
1 2 1 6
2 4 1 6
0 0 0
"""

FIXTURE_JSON = """\
{
  "name": "fixture-json",
  "kind": "RCPSP",
  "horizon": 12,
  "tasks": [
    {"duration": 0, "demands": [0]},
    {"duration": 1, "demands": [5]},
    {"duration": 1, "demands": [3]},
    {"duration": 1, "demands": [2]},
    {"duration": 2, "demands": [4]},
    {"duration": 0, "demands": [0]}
  ],
  "resources": [{"capacity": 7}],
  "precedences": [
    {"from": 0, "to": 1, "offset": 0},
    {"from": 0, "to": 2, "offset": 0},
    {"from": 0, "to": 3, "offset": 0},
    {"from": 0, "to": 4, "offset": 0},
    {"from": 1, "to": 5, "offset": 1},
    {"from": 2, "to": 5, "offset": 1},
    {"from": 3, "to": 5, "offset": 1},
    {"from": 4, "to": 5, "offset": 2}
  ]
}
"""

FIXTURE_FILES = {
    "fixture.sm": FIXTURE_SM,
    "fixture.sch": FIXTURE_SCH,
    "fixture.rcp": FIXTURE_RCP,
    "fixture.json": FIXTURE_JSON,
}
