// Copyright 2026 The ldpbench Authors
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
//
// Umbrella header for the ldpbench library.

#pragma once

#include "ldpbench/datasets.hpp"
#include "ldpbench/engine.hpp"
#include "ldpbench/error.hpp"
#include "ldpbench/metrics.hpp"
#include "ldpbench/postprocess.hpp"
#include "ldpbench/protocols.hpp"
#include "ldpbench/random.hpp"
#include "ldpbench/report.hpp"
#include "ldpbench/types.hpp"
#include "ldpbench/validate.hpp"
