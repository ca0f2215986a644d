// Copyright 2026 The pexsim Authors
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

#include "pexsim/bits.hpp"

#include <algorithm>

#include "pexsim/errors.hpp"

namespace pexsim {

std::string to_bitstring(u128 v, int n_qubits) {
    std::string out(static_cast<std::size_t>(n_qubits), '0');
    for (int j = 0; j < n_qubits; ++j) {
        if ((v >> j) & 1) out[static_cast<std::size_t>(n_qubits - 1 - j)] = '1';
    }
    return out;
}

u128 parse_bitstring(std::string_view bits) {
    if (bits.empty() || bits.size() > static_cast<std::size_t>(kMaxQubits)) {
        throw InputError("bitstring length must be in 1..=" + std::to_string(kMaxQubits));
    }
    u128 v = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        const char c = bits[i];
        if (c != '0' && c != '1') {
            throw InputError("bitstring may contain only 0 and 1");
        }
        if (c == '1') v |= u128{1} << (bits.size() - 1 - i);
    }
    return v;
}

std::string to_decimal(u128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v != 0) {
        out.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
        v /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace pexsim
