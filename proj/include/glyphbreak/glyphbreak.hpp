// Copyright 2026 The glyphbreak Authors.
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

#ifndef GLYPHBREAK_GLYPHBREAK_HPP_
#define GLYPHBREAK_GLYPHBREAK_HPP_

#include "glyphbreak/corpus.hpp"
#include "glyphbreak/detector.hpp"
#include "glyphbreak/error.hpp"
#include "glyphbreak/harness.hpp"
#include "glyphbreak/homoglyph.hpp"
#include "glyphbreak/misspell.hpp"
#include "glyphbreak/ngram.hpp"
#include "glyphbreak/remote.hpp"
#include "glyphbreak/report.hpp"
#include "glyphbreak/rng.hpp"
#include "glyphbreak/synthetic.hpp"
#include "glyphbreak/unicode.hpp"

#endif  // GLYPHBREAK_GLYPHBREAK_HPP_
