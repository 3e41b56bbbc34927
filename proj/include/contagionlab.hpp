/*
Copyright 2026 The contagionlab Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include "contagionlab/corpus.hpp"
#include "contagionlab/mann_whitney.hpp"
#include "contagionlab/null_model.hpp"
#include "contagionlab/pipeline.hpp"
#include "contagionlab/random.hpp"
#include "contagionlab/report.hpp"
#include "contagionlab/sentiment.hpp"
#include "contagionlab/susceptibility.hpp"
#include "contagionlab/synthgen.hpp"
#include "contagionlab/types.hpp"
#include "contagionlab/valence.hpp"
