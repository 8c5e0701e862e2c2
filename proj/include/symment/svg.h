// Copyright 2026 The Symment Authors
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

#ifndef SYMMENT_SVG_H
#define SYMMENT_SVG_H

#include <string>
#include <utility>
#include <vector>

namespace symment {

struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

struct ChartOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
};

/// Line chart with point markers on a fixed 800x600 viewport. Points that
/// cannot be placed on a log axis (non-positive or non-finite) are dropped.
std::string render_svg(const std::vector<Series> &series, const ChartOptions &options);

void emit_svg(const std::vector<Series> &series, const ChartOptions &options, const std::string &path);

}  // namespace symment

#endif
