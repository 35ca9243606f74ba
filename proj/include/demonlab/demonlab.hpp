// Copyright 2026 The demonlab Authors
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

#include "demonlab/brownian.hpp"
#include "demonlab/einstein.hpp"
#include "demonlab/errors.hpp"
#include "demonlab/fgr.hpp"
#include "demonlab/markov.hpp"
#include "demonlab/markov_io.hpp"
#include "demonlab/qiur.hpp"
#include "demonlab/qiur_io.hpp"
#include "demonlab/random.hpp"
#include "demonlab/speed_demon.hpp"
#include "demonlab/szilard.hpp"
#include "demonlab/units.hpp"
#include "demonlab/version.hpp"
