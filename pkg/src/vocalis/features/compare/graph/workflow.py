"""
ABOUTME: Workflow definitions for the method comparison.
ABOUTME: Builds the LangGraph state machine that runs every available method for one vowel.
"""

from langgraph.graph import END, StateGraph
from loguru import logger

from vocalis.features.compare.graph.nodes import audio_node, helmholtz_node, scaled_node, synth_node, webster_node
from vocalis.features.compare.graph.state import VowelState


def create_vowel_graph():
    """Create a graph for one vowel: W_R, then H_R and S_R when a mesh exists, W_F, then A_F when audio exists."""
    workflow = StateGraph(VowelState)

    workflow.add_node("webster", webster_node)
    workflow.add_node("helmholtz", helmholtz_node)
    workflow.add_node("scaled", scaled_node)
    workflow.add_node("synth", synth_node)
    workflow.add_node("audio", audio_node)

    workflow.set_entry_point("webster")
    workflow.add_conditional_edges(
        "webster",
        lambda state: "helmholtz" if state.mesh is not None else "synth",
        {"helmholtz": "helmholtz", "synth": "synth"},
    )
    workflow.add_edge("helmholtz", "scaled")
    workflow.add_edge("scaled", "synth")
    workflow.add_conditional_edges(
        "synth",
        lambda state: "audio" if state.waves else END,
        {"audio": "audio", END: END},
    )
    workflow.add_edge("audio", END)

    logger.debug("Vowel comparison graph created.")
    return workflow.compile()
