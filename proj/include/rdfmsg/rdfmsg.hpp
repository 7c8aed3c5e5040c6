// Copyright 2026 The rdfmsg Authors
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

// Umbrella header: the whole library in one include.

#pragma once

#include "rdfmsg/datetime.hpp"
#include "rdfmsg/errors.hpp"
#include "rdfmsg/isomorphism.hpp"
#include "rdfmsg/logstore.hpp"
#include "rdfmsg/message.hpp"
#include "rdfmsg/nquads.hpp"
#include "rdfmsg/profiles.hpp"
#include "rdfmsg/stream.hpp"
#include "rdfmsg/term.hpp"
#include "rdfmsg/text.hpp"
#include "rdfmsg/trig.hpp"
