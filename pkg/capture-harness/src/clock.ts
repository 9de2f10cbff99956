/** Time abstraction so the pacing schedule is testable without sleeping. */

export interface Clock {
  now(): Date;
  sleep(ms: number): Promise<void>;
}

export class RealClock implements Clock {
  now(): Date {
    return new Date();
  }

  sleep(ms: number): Promise<void> {
    return new Promise((resolve) => setTimeout(resolve, ms));
  }
}

/** Virtual clock: sleeping advances simulated time instantly. */
export class SimClock implements Clock {
  private elapsedMs = 0;
  readonly sleeps: number[] = [];

  constructor(private readonly epoch = Date.UTC(2026, 0, 1)) {}

  now(): Date {
    return new Date(this.epoch + this.elapsedMs);
  }

  async sleep(ms: number): Promise<void> {
    this.sleeps.push(ms);
    this.elapsedMs += ms;
  }
}
