// SPDX-License-Identifier: Apache-2.0
//
// nsp3d - 3D radar/cellular channel modelling and null-space projection
// Copyright (C) 2026 The nsp3d authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef NSP3D_NSP3D_HPP
#define NSP3D_NSP3D_HPP

#include "array_geometry.hpp"
#include "beamform.hpp"
#include "channel.hpp"
#include "error.hpp"
#include "nsp.hpp"
#include "pipeline.hpp"
#include "scenario.hpp"
#include "search_volume.hpp"

#endif
