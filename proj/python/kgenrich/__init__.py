# Copyright 2026 The kgenrich Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Enrichment operations for academic knowledge-graph dumps."""

import json as _json

from ._core import (
    STAGES,
    ConsistencyError,
    Gazetteer,
    InputError,
    LanguageDetector,
    author_mobility,
    clean_markup,
    decode_html_entities,
    ego_networks,
    flows,
    h_index,
    h_index_counting,
    h_index_definition,
    h_index_sorted,
    haversine_km,
    infobox_fields,
    normalize_country,
    process_abstract,
    propagate_labels,
    score_papers,
    secondary_country,
    stocks,
    tokenize,
)
from ._core import run as _run


def run(subcommand, manifest, output_dir, parallelism=1, skip_malformed=False):
    """Runs a pipeline stage and returns its run report as a dict."""
    return _json.loads(
        _run(subcommand, str(manifest), str(output_dir), parallelism, skip_malformed)
    )


__all__ = [
    "STAGES",
    "ConsistencyError",
    "Gazetteer",
    "InputError",
    "LanguageDetector",
    "author_mobility",
    "clean_markup",
    "decode_html_entities",
    "ego_networks",
    "flows",
    "h_index",
    "h_index_counting",
    "h_index_definition",
    "h_index_sorted",
    "haversine_km",
    "infobox_fields",
    "normalize_country",
    "process_abstract",
    "propagate_labels",
    "run",
    "score_papers",
    "secondary_country",
    "stocks",
    "tokenize",
]
