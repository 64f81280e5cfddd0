// Copyright 2026 The hyperghz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "hyperghz/address.hpp"
#include "hyperghz/analysis.hpp"
#include "hyperghz/calibrate.hpp"
#include "hyperghz/elements.hpp"
#include "hyperghz/ensemble.hpp"
#include "hyperghz/errors.hpp"
#include "hyperghz/fit.hpp"
#include "hyperghz/io.hpp"
#include "hyperghz/linalg.hpp"
#include "hyperghz/pipeline.hpp"
#include "hyperghz/source.hpp"
#include "hyperghz/sparse_state.hpp"
