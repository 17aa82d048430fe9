// Copyright 2026 The ltqmdd Authors
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

#pragma once

#include "ltqmdd/complex_table.hpp"
#include "ltqmdd/dense.hpp"
#include "ltqmdd/exchange.hpp"
#include "ltqmdd/linear_transform.hpp"
#include "ltqmdd/operations.hpp"
#include "ltqmdd/oracle.hpp"
#include "ltqmdd/package.hpp"
#include "ltqmdd/qasm.hpp"
#include "ltqmdd/sifting.hpp"
