import { defineConfig } from "vitest/config";

export default defineConfig({
    test: {
        environment: "happy-dom",
        include: ["tests/**/*.test.ts"],
        testTimeout: 60_000,
        hookTimeout: 60_000,
    },
});
