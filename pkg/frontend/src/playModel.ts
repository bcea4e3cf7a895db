import { ApiClient, ApiError } from "./api.js";
import type { CatalogSample, SessionView } from "./types.js";

/** Screen sequence of one facilitator-led game:
 *
 *   assignment -> describe -> guess -> (won)
 *                                   -> validity -> similarity -> describe
 *                                                             -> lost (Game Over)
 *
 * The model owns every piece of UI state; the DOM layer renders it
 * verbatim. No screen ever offers an action the engine would reject:
 * the description box exists only on `describe`, judgment buttons only on
 * `guess`, rating widgets only on `validity`/`similarity`.
 */
export type Screen =
  | "assignment"
  | "describe"
  | "guess"
  | "validity"
  | "similarity"
  | "won"
  | "lost";

export interface PlayState {
  screen: Screen;
  catalog: CatalogSample[];
  session: SessionView | null;
  /** Guess awaiting the player's verdict, phrased "Are you having number n?" */
  pendingGuessId: number | null;
  chosenValidity: number | null;
  ratingError: string | null;
  descriptionError: string | null;
  /** Blocking banner when the service cannot be reached. */
  banner: string | null;
  gameOverModal: boolean;
  busy: boolean;
}

type Listener = (state: PlayState) => void;

export class PlayModel {
  private state: PlayState = {
    screen: "assignment",
    catalog: [],
    session: null,
    pendingGuessId: null,
    chosenValidity: null,
    ratingError: null,
    descriptionError: null,
    banner: null,
    gameOverModal: false,
    busy: false,
  };

  private listeners: Listener[] = [];

  constructor(private readonly api: ApiClient) {}

  getState(): PlayState {
    return this.state;
  }

  onChange(listener: Listener): void {
    this.listeners.push(listener);
  }

  private update(patch: Partial<PlayState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  /** Widget-visibility rules, kept in one place so tests can pin them. */
  get describeEnabled(): boolean {
    return this.state.screen === "describe" && !this.state.busy;
  }

  get judgmentEnabled(): boolean {
    return this.state.screen === "guess" && !this.state.busy;
  }

  get ratingWidgetVisible(): boolean {
    return this.state.screen === "validity" || this.state.screen === "similarity";
  }

  sampleName(id: number | null): string {
    if (id === null) return "?";
    const sample = this.state.catalog.find((s) => s.id === id);
    return sample ? sample.name : `#${id}`;
  }

  async loadCatalog(): Promise<void> {
    try {
      const body = await this.api.getCatalog();
      this.update({ catalog: body.samples, banner: null });
    } catch (error) {
      this.update({ banner: this.describeFailure(error) });
    }
  }

  async start(targetId: number, referenceId: number): Promise<void> {
    if (this.state.screen !== "assignment") return;
    this.update({ busy: true });
    try {
      const session = await this.api.startSession(targetId, referenceId);
      this.update({
        session,
        screen: "describe",
        pendingGuessId: null,
        chosenValidity: null,
        ratingError: null,
        descriptionError: null,
        gameOverModal: false,
        banner: null,
        busy: false,
      });
    } catch (error) {
      this.fail(error);
    }
  }

  async submitDescription(text: string): Promise<void> {
    if (!this.describeEnabled || this.state.session === null) return;
    if (!text.trim()) {
      this.update({ descriptionError: "describe the target before submitting" });
      return;
    }
    this.update({ busy: true, descriptionError: null });
    try {
      const result = await this.api.describe(this.state.session.session_id, text);
      const session = await this.api.getSession(this.state.session.session_id);
      this.update({
        session,
        pendingGuessId: result.predicted_id,
        screen: "guess",
        banner: null,
        busy: false,
      });
    } catch (error) {
      this.fail(error);
    }
  }

  async judgeCorrect(): Promise<void> {
    if (!this.judgmentEnabled || this.state.session === null) return;
    this.update({ busy: true });
    try {
      const session = await this.api.judge(this.state.session.session_id, true);
      this.update({ session, screen: "won", pendingGuessId: null, busy: false });
    } catch (error) {
      this.fail(error);
    }
  }

  /** Incorrect is judged locally first: ratings are collected before any
   * request, because the engine requires both scores with the verdict. */
  judgeIncorrect(): void {
    if (!this.judgmentEnabled) return;
    this.update({ screen: "validity", chosenValidity: null, ratingError: null });
  }

  /** Rating entry for the current rating screen. Values outside 1..10 are
   * rejected inline; no request leaves the browser. */
  async submitRating(value: number): Promise<void> {
    if (!this.ratingWidgetVisible || this.state.session === null) return;
    if (!Number.isInteger(value) || value < 1 || value > 10) {
      this.update({ ratingError: `ratings are whole numbers from 1 to 10, got ${value}` });
      return;
    }
    if (this.state.screen === "validity") {
      this.update({ chosenValidity: value, screen: "similarity", ratingError: null });
      return;
    }
    const validity = this.state.chosenValidity;
    if (validity === null) {
      this.update({ screen: "validity", ratingError: "validity score missing" });
      return;
    }
    this.update({ busy: true, ratingError: null });
    try {
      const session = await this.api.judge(this.state.session.session_id, false, validity, value);
      if (session.state === "lost") {
        this.update({
          session,
          screen: "lost",
          gameOverModal: true,
          pendingGuessId: null,
          chosenValidity: null,
          busy: false,
        });
      } else {
        this.update({
          session,
          screen: "describe",
          pendingGuessId: null,
          chosenValidity: null,
          busy: false,
        });
      }
    } catch (error) {
      this.fail(error);
    }
  }

  dismissGameOver(): void {
    this.update({ gameOverModal: false });
  }

  newGame(): void {
    this.update({
      screen: "assignment",
      session: null,
      pendingGuessId: null,
      chosenValidity: null,
      ratingError: null,
      descriptionError: null,
      gameOverModal: false,
    });
  }

  private describeFailure(error: unknown): string {
    if (error instanceof ApiError && error.status === 0) {
      return "service unreachable - is the backend running?";
    }
    return error instanceof Error ? error.message : String(error);
  }

  private fail(error: unknown): void {
    // 4xx validation problems surface inline; transport failures block.
    if (error instanceof ApiError && error.status > 0) {
      this.update({ busy: false, ratingError: null, descriptionError: error.detail });
    } else {
      this.update({ busy: false, banner: this.describeFailure(error) });
    }
  }
}
