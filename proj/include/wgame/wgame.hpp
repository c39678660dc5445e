// Copyright 2026 The wgame Authors.
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

#include "wgame/corpus.hpp"
#include "wgame/error.hpp"
#include "wgame/field.hpp"
#include "wgame/io.hpp"
#include "wgame/kuhn.hpp"
#include "wgame/model.hpp"
#include "wgame/necessity.hpp"
#include "wgame/parallel.hpp"
#include "wgame/playability.hpp"
#include "wgame/rational.hpp"
#include "wgame/recall.hpp"
#include "wgame/report.hpp"
#include "wgame/strategy.hpp"
