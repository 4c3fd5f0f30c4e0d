// Copyright 2026 The mpsfuse Authors
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

#ifndef MPSFUSE_MPSFUSE_HPP
#define MPSFUSE_MPSFUSE_HPP

// Umbrella header: includes the whole library.

#include "mpsfuse/num.hpp"
#include "mpsfuse/mps.hpp"
#include "mpsfuse/simps.hpp"
#include "mpsfuse/group.hpp"
#include "mpsfuse/qudit.hpp"
#include "mpsfuse/fusion.hpp"
#include "mpsfuse/anomaly.hpp"
#include "mpsfuse/catalog.hpp"
#include "mpsfuse/io.hpp"

#endif  // MPSFUSE_MPSFUSE_HPP
