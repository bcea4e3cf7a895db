"""A scripted guessing session showing the full protocol state machine.

The player describes a hidden target relative to a reference; the engine
embeds the accumulated description, blends it with the reference vector
and guesses. Wrong guesses collect 1-10 ratings and swap the shown
reference; a correct guess ends the session.

Run: python3 demos/03_guessing_session.py
"""

from textileguess import (
    Assignment,
    MockEmbeddingBackend,
    SessionState,
    build_embedding_store,
    judge,
    load_bundled_catalog,
    render_description,
    start_session,
    submit_description,
)

catalog = load_bundled_catalog()
backend = MockEmbeddingBackend(dim=256)
store = build_embedding_store(catalog, backend)

target, reference = 8, 1  # silk satin described against cotton denim
session = start_session(Assignment(target_id=target, reference_id=reference), store)
print(f"target:    {target} ({catalog.by_id(target).name})  <- hidden from the engine's scoring")
print(f"reference: {reference} ({catalog.by_id(reference).name})")
print(f"state:     {session.state.value}\n")

descriptions = [
    "much smoother and lighter than the reference",        # vague: may miss
    "cool slippery glossy surface that drapes fluidly",    # closer
    render_description(catalog.by_id(target)),             # the full description
]

for text in descriptions:
    if session.state is not SessionState.AWAITING_DESCRIPTION:
        break
    predicted, scores = submit_description(session, text, store, backend)
    attempt = session.attempts[-1]
    print(f"attempt {attempt.index}: \"{text[:60]}...\"" if len(text) > 60 else
          f"attempt {attempt.index}: \"{text}\"")
    print(f"  guess: {predicted} ({catalog.by_id(predicted).name}), "
          f"cosine {scores[predicted]:+.4f}")
    if predicted == target:
        judge(session, correct=True)
        print("  judged correct -> session won (implicit ratings 10/10)")
    else:
        judge(session, correct=False, validity=6, similarity=5)
        print(f"  judged incorrect (validity 6, similarity 5); "
              f"new shown reference: {session.shown_reference_id}")
    print(f"  state: {session.state.value}\n")

print(f"final state: {session.state.value} after {len(session.attempts)} attempt(s)")
print("accumulated query the engine actually embedded on the last attempt:")
print(f"  {session.accumulated_query[:160]}...")
