#include "rfh/fixtures.hpp"

#include <algorithm>

#include "rfh/errors.hpp"

namespace rfh::fixtures {

namespace {

constexpr std::string_view kS2 = R"({
  "dimension": 2,
  "critical_points": [
    {"id": "s", "index": 0, "value": 0.0},
    {"id": "n", "index": 2, "value": 2.0}
  ],
  "boundary": {},
  "euler": 0
})";

constexpr std::string_view kT2 = R"({
  "dimension": 2,
  "critical_points": [
    {"id": "m", "index": 0, "value": 0.0},
    {"id": "a", "index": 1, "value": 1.0},
    {"id": "b", "index": 1, "value": 1.0},
    {"id": "M", "index": 2, "value": 2.0}
  ],
  "boundary": {},
  "euler": 0
})";

constexpr std::string_view kRp2 = R"({
  "dimension": 2,
  "critical_points": [
    {"id": "m", "index": 0, "value": 0.0},
    {"id": "e", "index": 1, "value": 1.0},
    {"id": "M", "index": 2, "value": 2.0}
  ],
  "boundary": {},
  "euler": 1
})";

constexpr std::string_view kS2Rf = R"json({
  "class_negation": {},
  "comorse_boundary": {
    "h0": [
      "h1"
    ]
  },
  "constant": {
    "boundary": {},
    "critical_points": [
      {
        "id": "s",
        "index": 0,
        "value": 0.0
      },
      {
        "id": "n",
        "index": 2,
        "value": 2.0
      }
    ],
    "dimension": 2,
    "euler": 0
  },
  "contractible_class": "0",
  "morse_boundary": {
    "h1": [
      "h0"
    ]
  },
  "orbits": [
    {
      "class": "0",
      "energy": 1.0,
      "id": "c1_0",
      "ind_minus": 4,
      "ind_plus": 1,
      "value": 0.0
    },
    {
      "class": "0",
      "energy": 1.0,
      "id": "c1_1",
      "ind_minus": 3,
      "ind_plus": 2,
      "value": 1.0
    },
    {
      "class": "0",
      "energy": 1.0,
      "id": "c1_2",
      "ind_minus": 2,
      "ind_plus": 3,
      "value": 2.0
    },
    {
      "class": "0",
      "energy": 1.0,
      "id": "c1_3",
      "ind_minus": 1,
      "ind_plus": 4,
      "value": 3.0
    },
    {
      "class": "0",
      "energy": 4.0,
      "id": "c2_0",
      "ind_minus": 6,
      "ind_plus": 3,
      "value": 0.0
    },
    {
      "class": "0",
      "energy": 4.0,
      "id": "c2_1",
      "ind_minus": 5,
      "ind_plus": 4,
      "value": 1.0
    },
    {
      "class": "0",
      "energy": 4.0,
      "id": "c2_2",
      "ind_minus": 4,
      "ind_plus": 5,
      "value": 2.0
    },
    {
      "class": "0",
      "energy": 4.0,
      "id": "c2_3",
      "ind_minus": 3,
      "ind_plus": 6,
      "value": 3.0
    },
    {
      "class": "0",
      "energy": 0.5,
      "id": "h0",
      "ind_minus": 0,
      "ind_plus": 1,
      "value": 0.0
    },
    {
      "class": "0",
      "energy": 0.75,
      "id": "h1",
      "ind_minus": 1,
      "ind_plus": 2,
      "value": 0.0
    }
  ],
  "phi": {
    "c1_0": [
      "Z+(h0)"
    ],
    "c1_1": [
      "Z+(n)"
    ],
    "c2_0": [
      "Z+(c1_2)"
    ],
    "c2_1": [
      "Z+(c1_3)"
    ],
    "h0": [
      "Z-(h0)"
    ],
    "s": [
      "Z-(c1_3)"
    ]
  },
  "psi": {
    "Z+(c1_0)": [
      "h0"
    ],
    "Z+(h0)": [
      "h0"
    ],
    "Z+(s)": [
      "c1_3",
      "h1"
    ],
    "Z-(c1_1)": [
      "c2_3"
    ],
    "Z-(h1)": [
      "c1_3"
    ],
    "Z-(s)": [
      "c1_2"
    ]
  },
  "rf": {
    "boundary": {
      "Z+(c1_0)": [
        "Z-(c1_3)",
        "Z-(h1)"
      ],
      "Z+(h0)": [
        "Z-(c1_3)",
        "Z-(h1)"
      ],
      "Z+(h1)": [
        "Z+(h0)",
        "Z-(h0)"
      ],
      "Z-(h0)": [
        "Z-(c1_3)",
        "Z-(h1)"
      ]
    },
    "degrees": {
      "Z+(c1_0)": 1,
      "Z+(c1_1)": 2,
      "Z+(c1_2)": 3,
      "Z+(c1_3)": 4,
      "Z+(c2_0)": 3,
      "Z+(c2_1)": 4,
      "Z+(c2_2)": 5,
      "Z+(c2_3)": 6,
      "Z+(h0)": 1,
      "Z+(h1)": 2,
      "Z+(n)": 2,
      "Z+(s)": 0,
      "Z-(c1_0)": -3,
      "Z-(c1_1)": -2,
      "Z-(c1_2)": -1,
      "Z-(c1_3)": 0,
      "Z-(c2_0)": -5,
      "Z-(c2_1)": -4,
      "Z-(c2_2)": -3,
      "Z-(c2_3)": -2,
      "Z-(h0)": 1,
      "Z-(h1)": 0,
      "Z-(n)": 1,
      "Z-(s)": -1
    }
  }
})json";

constexpr std::string_view kRp2Rf = R"json({
  "class_negation": {},
  "comorse_boundary": {
    "h0": [
      "h1"
    ]
  },
  "constant": {
    "boundary": {},
    "critical_points": [
      {
        "id": "m",
        "index": 0,
        "value": 0.0
      },
      {
        "id": "e",
        "index": 1,
        "value": 1.0
      },
      {
        "id": "M",
        "index": 2,
        "value": 2.0
      }
    ],
    "dimension": 2,
    "euler": 1
  },
  "contractible_class": "0",
  "morse_boundary": {
    "h1": [
      "h0"
    ]
  },
  "orbits": [
    {
      "class": "a",
      "energy": 1.0,
      "id": "a1_0",
      "ind_minus": 3,
      "ind_plus": 0,
      "value": 0.0
    },
    {
      "class": "a",
      "energy": 1.0,
      "id": "a1_1",
      "ind_minus": 2,
      "ind_plus": 1,
      "value": 1.0
    },
    {
      "class": "a",
      "energy": 1.0,
      "id": "a1_2",
      "ind_minus": 1,
      "ind_plus": 2,
      "value": 2.0
    },
    {
      "class": "a",
      "energy": 1.0,
      "id": "a1_3",
      "ind_minus": 0,
      "ind_plus": 3,
      "value": 3.0
    },
    {
      "class": "0",
      "energy": 4.0,
      "id": "c2_0",
      "ind_minus": 4,
      "ind_plus": 1,
      "value": 0.0
    },
    {
      "class": "0",
      "energy": 4.0,
      "id": "c2_1",
      "ind_minus": 3,
      "ind_plus": 2,
      "value": 1.0
    },
    {
      "class": "0",
      "energy": 4.0,
      "id": "c2_2",
      "ind_minus": 2,
      "ind_plus": 3,
      "value": 2.0
    },
    {
      "class": "0",
      "energy": 4.0,
      "id": "c2_3",
      "ind_minus": 1,
      "ind_plus": 4,
      "value": 3.0
    },
    {
      "class": "a",
      "energy": 9.0,
      "id": "a3_0",
      "ind_minus": 5,
      "ind_plus": 2,
      "value": 0.0
    },
    {
      "class": "a",
      "energy": 9.0,
      "id": "a3_1",
      "ind_minus": 4,
      "ind_plus": 3,
      "value": 1.0
    },
    {
      "class": "a",
      "energy": 9.0,
      "id": "a3_2",
      "ind_minus": 3,
      "ind_plus": 4,
      "value": 2.0
    },
    {
      "class": "a",
      "energy": 9.0,
      "id": "a3_3",
      "ind_minus": 2,
      "ind_plus": 5,
      "value": 3.0
    },
    {
      "class": "0",
      "energy": 0.5,
      "id": "h0",
      "ind_minus": 0,
      "ind_plus": 1,
      "value": 0.0
    },
    {
      "class": "0",
      "energy": 0.75,
      "id": "h1",
      "ind_minus": 1,
      "ind_plus": 2,
      "value": 0.0
    }
  ],
  "phi": {
    "a3_1": [
      "Z+(a1_3)"
    ],
    "c2_1": [
      "Z+(h1)"
    ],
    "e": [
      "Z-(h0)"
    ],
    "h0": [
      "Z-(h0)"
    ]
  },
  "psi": {
    "Z+(e)": [
      "h0"
    ],
    "Z+(h0)": [
      "h0"
    ],
    "Z+(m)": [
      "h1"
    ],
    "Z-(e)": [
      "h1"
    ]
  },
  "rf": {
    "boundary": {
      "Z+(c2_1)": [
        "Z+(h0)",
        "Z-(h0)"
      ],
      "Z+(e)": [
        "Z-(h1)"
      ],
      "Z+(h0)": [
        "Z-(h1)"
      ],
      "Z+(h1)": [
        "Z+(h0)",
        "Z-(h0)"
      ],
      "Z-(M)": [
        "Z+(m)",
        "Z-(h1)"
      ],
      "Z-(h0)": [
        "Z-(h1)"
      ]
    },
    "degrees": {
      "Z+(M)": 2,
      "Z+(a1_0)": 0,
      "Z+(a1_1)": 1,
      "Z+(a1_2)": 2,
      "Z+(a1_3)": 3,
      "Z+(a3_0)": 2,
      "Z+(a3_1)": 3,
      "Z+(a3_2)": 4,
      "Z+(a3_3)": 5,
      "Z+(c2_0)": 1,
      "Z+(c2_1)": 2,
      "Z+(c2_2)": 3,
      "Z+(c2_3)": 4,
      "Z+(e)": 1,
      "Z+(h0)": 1,
      "Z+(h1)": 2,
      "Z+(m)": 0,
      "Z-(M)": 1,
      "Z-(a1_0)": -2,
      "Z-(a1_1)": -1,
      "Z-(a1_2)": 0,
      "Z-(a1_3)": 1,
      "Z-(a3_0)": -4,
      "Z-(a3_1)": -3,
      "Z-(a3_2)": -2,
      "Z-(a3_3)": -1,
      "Z-(c2_0)": -3,
      "Z-(c2_1)": -2,
      "Z-(c2_2)": -1,
      "Z-(c2_3)": 0,
      "Z-(e)": 0,
      "Z-(h0)": 1,
      "Z-(h1)": 0,
      "Z-(m)": -1
    }
  }
})json";

// One family of closed geodesics: a critical manifold with one auxiliary
// critical point in each degree 0..3.
void add_family(rf::ModelSkeleton& sk, const std::string& prefix, int index, double energy,
                const std::string& klass) {
  for (int a = 0; a <= 3; ++a) {
    sk.orbits.push_back({prefix + std::to_string(a), index + a, index + 3 - a, energy,
                         static_cast<double>(a), klass});
  }
}

// Contractible pair cancelling in both Morse complexes; its lower member has
// minus index zero and carries the homotopy.
void add_homotopy_pair(rf::ModelSkeleton& sk) {
  sk.orbits.push_back({"h0", 1, 0, 0.5, 0.0, sk.contractible_class});
  sk.orbits.push_back({"h1", 2, 1, 0.75, 0.0, sk.contractible_class});
  sk.morse_boundary["h1"] = {"h0"};
  sk.comorse_boundary["h0"] = {"h1"};
  sk.homotopy_target = "h0";
}

MorseData constant_part(int euler, std::vector<CriticalPoint> points) {
  MorseData d;
  d.dimension = 2;
  d.critical_points = std::move(points);
  d.euler_parity = euler;
  return d;
}

}  // namespace

const std::vector<std::string>& names() {
  static const std::vector<std::string> all{"s2", "t2", "rp2", "s2-rf", "rp2-rf"};
  return all;
}

std::string_view json_text(std::string_view name) {
  if (name == "s2") return kS2;
  if (name == "t2") return kT2;
  if (name == "rp2") return kRp2;
  if (name == "s2-rf") return kS2Rf;
  if (name == "rp2-rf") return kRp2Rf;
  throw InputError("unknown example '" + std::string(name) + "'");
}

bool is_rf_model(std::string_view name) { return name == "s2-rf" || name == "rp2-rf"; }

rf::ModelSkeleton s2_rf_skeleton() {
  rf::ModelSkeleton sk;
  sk.constant = constant_part(0, {{"s", 0, 0.0}, {"n", 2, 2.0}});
  add_family(sk, "c1_", 1, 1.0, "0");
  add_family(sk, "c2_", 3, 4.0, "0");
  add_homotopy_pair(sk);
  return sk;
}

rf::ModelSkeleton rp2_rf_skeleton() {
  rf::ModelSkeleton sk;
  sk.constant = constant_part(1, {{"m", 0, 0.0}, {"e", 1, 1.0}, {"M", 2, 2.0}});
  add_family(sk, "a1_", 0, 1.0, "a");
  add_family(sk, "c2_", 1, 4.0, "0");
  add_family(sk, "a3_", 2, 9.0, "a");
  add_homotopy_pair(sk);
  return sk;
}

}  // namespace rfh::fixtures
