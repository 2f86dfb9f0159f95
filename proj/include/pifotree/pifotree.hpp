// Copyright 2026 The pifotree authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "pifotree/control.hpp"
#include "pifotree/embed_algorithms.hpp"
#include "pifotree/embedding.hpp"
#include "pifotree/errors.hpp"
#include "pifotree/gantt.hpp"
#include "pifotree/packet.hpp"
#include "pifotree/pifo.hpp"
#include "pifotree/policies.hpp"
#include "pifotree/rational.hpp"
#include "pifotree/simulator.hpp"
#include "pifotree/theory.hpp"
#include "pifotree/topology.hpp"
#include "pifotree/tree.hpp"
#include "pifotree/tree_io.hpp"
