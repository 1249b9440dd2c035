from .codec import (MacrotileCodec, block_of, blocks, check_codec_validity, decode_star, extract_block,
                    identity_codec, window_width)
from .fuzz import FuzzReport, check_clean_mapping
from .verify import (CheckResult, SimulationReport, reaches, verify_follows, verify_models,
                     verify_simulation)
